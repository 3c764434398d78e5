"""Run configuration files.

Sectioned ``key = value`` text with ``#`` comments::

    [model]
    alpha = 1
    gamma = 1
    p = 1

    [damping]
    kind = constant
    a0 = 1

    [grid]
    Lx = 600
    Ly = 600
    Nx = 4096
    Ny = 4096

    [run]
    dt = 0.001
    t_end = 2
    sample_every = 100

    [initial]
    kind = gaussian
    amplitude = 0.5
    sigma = 4

    [output]
    directory = out
    snapshot_times = 0, 1, 2

Unknown sections or keys are errors.  Parsing stops at the first problem and
reports its line number and key.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .model import DampingProfile, ModelParams
from .spectral import GridSpec

__all__ = ["InitialSpec", "RunConfig", "parse_config", "load_config", "FULL_GRID", "DESK_GRID"]

FULL_GRID = GridSpec(600.0, 600.0, 4096, 4096)
DESK_GRID = GridSpec(150.0, 150.0, 512, 512)
DESK_DT = 2e-3

INITIAL_KINDS = ("gaussian", "traveling_wave", "mode", "file")


@dataclass(frozen=True)
class InitialSpec:
    """Initial datum.  ``mode`` is ``amplitude * cos(xi_mx x + eta_ny y)``."""

    kind: str = "gaussian"
    amplitude: float = 0.5
    sigma: float = 4.0
    c: float = 1.0
    r: float = 0.0
    h: float = -1.0
    mx: int = 1
    ny: int = 0
    path: str = ""


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams = field(default_factory=ModelParams)
    grid: GridSpec = FULL_GRID
    dt: float = 1e-3
    t_end: float = 2.0
    sample_every: int = 100
    initial: InitialSpec = field(default_factory=InitialSpec)
    output_dir: str = "out"
    snapshot_times: tuple[float, ...] = ()
    seed: int = 0
    rebootstrap_every: int = 0

    def with_scale(self, scale: str | None, *, desk_dt: bool = False) -> "RunConfig":
        """Apply a ``--scale`` preset; ``desk_dt`` also coarsens dt for desk runs."""
        if scale is None:
            return self
        if scale == "paper":
            return dataclasses.replace(self, grid=FULL_GRID)
        if scale == "desk":
            dt = DESK_DT if desk_dt else self.dt
            return dataclasses.replace(self, grid=DESK_GRID, dt=dt)
        raise ConfigError(f"unknown scale {scale!r} (expected desk or paper)", key="scale")


# (section, key) -> parser.  Values are validated again by the domain types.
def _int(s):
    v = float(s)
    if not v.is_integer():
        raise ValueError(f"expected an integer, got {s!r}")
    return int(v)


def _float(s):
    v = float(s)
    if not math.isfinite(v):
        raise ValueError(f"expected a finite number, got {s!r}")
    return v


def _str(s):
    return s


def _float_list(s):
    return tuple(_float(p) for p in s.split(",") if p.strip())


_SCHEMA = {
    "model": {"alpha": _float, "gamma": _int, "p": _int},
    "damping": {
        "kind": _str, "a0": _float, "lambda0": _float, "B": _float, "C": _float,
        "D": _float, "smoothing_width": _float,
    },
    "grid": {"Lx": _float, "Ly": _float, "Nx": _int, "Ny": _int},
    "run": {"dt": _float, "t_end": _float, "sample_every": _int, "seed": _int, "rebootstrap_every": _int},
    "initial": {
        "kind": _str, "amplitude": _float, "sigma": _float, "c": _float, "r": _float, "h": _float,
        "mx": _int, "ny": _int, "path": _str,
    },
    "output": {"directory": _str, "snapshot_times": _float_list},
}


def parse_config(text: str) -> RunConfig:
    values: dict[str, dict[str, tuple[object, int]]] = {s: {} for s in _SCHEMA}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", line=lineno)
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(f"unknown section [{section}]", key=section, line=lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {raw.strip()!r}", line=lineno)
        if section is None:
            raise ConfigError("key outside of any section", line=lineno)
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _SCHEMA[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]", key=key, line=lineno)
        if key in values[section]:
            raise ConfigError(f"duplicate key {key!r} in [{section}]", key=key, line=lineno)
        try:
            values[section][key] = (_SCHEMA[section][key](val), lineno)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", key=key, line=lineno) from None
    return _build(values)


def _kwargs(values, section):
    return {k: v for k, (v, _) in values[section].items()}


def _validated(values, section, factory, defaults=None, **extra):
    """Construct a domain object; blame the first key whose name the error mentions."""
    kw = {**(defaults or {}), **_kwargs(values, section), **extra}
    try:
        return factory(**kw)
    except ValueError as exc:
        msg = str(exc)
        entries = values[section]
        culprit = next((k for k in kw if msg.startswith(k + " ")), None)
        culprit = culprit or next((k for k in kw if f" {k} " in f" {msg} " or f"{k}=" in msg), None)
        line = entries[culprit][1] if culprit in entries else None
        raise ConfigError(msg, key=culprit, line=line) from None


def _build(values) -> RunConfig:
    damping = _validated(values, "damping", DampingProfile)
    model = _validated(values, "model", ModelParams, damping=damping)

    grid = _validated(values, "grid", GridSpec, defaults=dataclasses.asdict(FULL_GRID))

    run = _kwargs(values, "run")
    for key, ok, msg in (
        ("dt", lambda v: v > 0, "dt must be > 0"),
        ("t_end", lambda v: v >= 0, "t_end must be >= 0"),
        ("sample_every", lambda v: v >= 1, "sample_every must be >= 1"),
        ("rebootstrap_every", lambda v: v >= 0, "rebootstrap_every must be >= 0"),
    ):
        if key in run and not ok(run[key]):
            raise ConfigError(msg, key=key, line=values["run"][key][1])

    initial = InitialSpec(**_kwargs(values, "initial"))
    init_line = lambda k: values["initial"].get(k, (None, None))[1]  # noqa: E731
    if initial.kind not in INITIAL_KINDS:
        raise ConfigError(f"initial kind must be one of {INITIAL_KINDS}", key="kind", line=init_line("kind"))
    if initial.kind == "gaussian" and not initial.sigma > 0:
        raise ConfigError("sigma must be > 0", key="sigma", line=init_line("sigma"))
    if initial.kind == "file" and not initial.path:
        raise ConfigError("initial kind 'file' needs a path", key="path", line=init_line("kind"))
    if initial.kind == "traveling_wave":
        from .exact import build_traveling_wave
        from .errors import AdmissibilityError

        try:
            build_traveling_wave(model.alpha, model.gamma, initial.c, initial.r, initial.h)
        except AdmissibilityError as exc:
            raise ConfigError(f"traveling wave not admissible: {exc}", key="h", line=init_line("h")) from None

    out = _kwargs(values, "output")
    snaps = tuple(out.get("snapshot_times", ()))
    if any(t < 0 for t in snaps):
        raise ConfigError("snapshot times must be >= 0", key="snapshot_times",
                          line=values["output"]["snapshot_times"][1])

    return RunConfig(
        model=model,
        grid=grid,
        dt=run.get("dt", 1e-3),
        t_end=run.get("t_end", 2.0),
        sample_every=run.get("sample_every", 100),
        initial=initial,
        output_dir=out.get("directory", "out"),
        snapshot_times=snaps,
        seed=run.get("seed", 0),
        rebootstrap_every=run.get("rebootstrap_every", 0),
    )


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
