"""CSV series, binary snapshots and minimal SVG line charts."""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .diagnostics import TimeSeries
from .spectral import GridSpec, RealField

__all__ = [
    "SNAPSHOT_MAGIC",
    "write_series_csv",
    "read_series_csv",
    "write_profile_csv",
    "read_profile_csv",
    "write_snapshot",
    "read_snapshot",
    "snapshot_name",
    "svg_line_plot",
]

SNAPSHOT_MAGIC = b"BBMKP1\0\0"
_HEADER = struct.Struct("<8sQQddd")
SERIES_COLUMNS = ("t", "l2", "log_l2", "energy", "diss_residual")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_series_csv(path, series: TimeSeries) -> None:
    resid = series.extra.get("diss_residual", np.zeros(len(series)))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SERIES_COLUMNS)
        for t, l2, e, d in zip(series.times, series.l2, series.energy, resid):
            log_l2 = np.log(l2) if l2 > 0 else -np.inf
            w.writerow([_fmt(t), _fmt(l2), _fmt(log_l2), _fmt(e), _fmt(d)])


def read_series_csv(path) -> TimeSeries:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if tuple(header) != SERIES_COLUMNS:
        raise ValueError(f"unexpected series header {header}")
    data = np.array([[float(v) for v in row] for row in body], dtype=float).reshape(-1, len(header))
    return TimeSeries(data[:, 0], data[:, 1], data[:, 3], {"diss_residual": data[:, 4]})


def write_profile_csv(path, x, columns: dict[str, np.ndarray]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", *columns])
        for i, xv in enumerate(x):
            w.writerow([_fmt(xv), *(_fmt(col[i]) for col in columns.values())])


def read_profile_csv(path) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    data = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    return {name: data[:, j] for j, name in enumerate(rows[0])}


def snapshot_name(t: float) -> str:
    return f"snapshot_t{float(t):g}.bin"


def write_snapshot(path, field: RealField, t: float) -> None:
    g = field.grid
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(SNAPSHOT_MAGIC, g.Nx, g.Ny, g.Lx, g.Ly, float(t)))
        fh.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())


def read_snapshot(path) -> tuple[RealField, float]:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError("snapshot file is truncated")
    magic, nx, ny, lx, ly, t = _HEADER.unpack_from(raw)
    if magic != SNAPSHOT_MAGIC:
        raise ValueError("not a BBMKP1 snapshot file")
    expected = _HEADER.size + 8 * nx * ny
    if len(raw) != expected:
        raise ValueError(f"snapshot size {len(raw)} does not match header ({expected} bytes)")
    values = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(nx, ny)
    return RealField(GridSpec(lx, ly, nx, ny), values.astype(float)), t


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    if hi <= lo:
        return np.array([lo])
    raw = (hi - lo) / n
    mag = 10 ** np.floor(np.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    return np.arange(np.ceil(lo / step) * step, hi + 0.5 * step, step)


def svg_line_plot(lines, title="", xlabel="", ylabel="", width=640, height=400) -> str:
    """Render ``lines`` (iterable of ``(x, y, label)``) as an SVG line chart."""
    lines = [(np.asarray(x, float), np.asarray(y, float), label) for x, y, label in lines]
    xs = np.concatenate([x for x, _, _ in lines])
    ys = np.concatenate([y for _, y, _ in lines])
    finite = np.isfinite(ys)
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys[finite].min()), float(ys[finite].max())
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (1 - (y - y0) / (y1 - y0)) * ph

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    dashes = ["", ' stroke-dasharray="4 3"', ' stroke-dasharray="1 3"', ""]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for tx in _ticks(x0, x1):
        out.append(f'<line x1="{px(tx):.2f}" y1="{top + ph}" x2="{px(tx):.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(tx):.2f}" y="{top + ph + 18}" text-anchor="middle">{tx:g}</text>')
    for ty in _ticks(y0, y1):
        out.append(f'<line x1="{left - 5}" y1="{py(ty):.2f}" x2="{left}" y2="{py(ty):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py(ty) + 4:.2f}" text-anchor="end">{ty:.3g}</text>')
    for i, (x, y, label) in enumerate(lines):
        ok = np.isfinite(y)
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[ok], y[ok]))
        out.append(
            f'<polyline fill="none" stroke="{colors[i % 4]}" stroke-width="1.5"{dashes[i % 4]} points="{pts}"/>'
        )
        out.append(
            f'<text x="{left + pw - 5}" y="{top + 15 + 15 * i}" text-anchor="end" '
            f'fill="{colors[i % 4]}">{label}</text>'
        )
    if title:
        out.append(f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">{title}</text>')
    if xlabel:
        out.append(f'<text x="{left + pw / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>')
    if ylabel:
        out.append(
            f'<text x="16" y="{top + ph / 2}" text-anchor="middle" '
            f'transform="rotate(-90 16 {top + ph / 2})">{ylabel}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
