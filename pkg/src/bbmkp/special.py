"""Jacobi sn, complete elliptic integral K, and real cubic roots.

The elliptic routines take the *parameter* ``m = k**2`` by default.  Passing
``convention="modulus"`` interprets the argument as the modulus ``k`` instead;
it exists so the two readings can be compared against the traveling wave.
"""

from __future__ import annotations

import math
import sys

import numpy as np

__all__ = ["elliptic_K", "jacobi_sn", "jacobi_sn_cn", "real_cubic_roots", "to_parameter"]

_AGM_TOL = 4 * sys.float_info.epsilon
_AGM_MAXITER = 60


def to_parameter(m: float, convention: str = "parameter") -> float:
    if convention == "parameter":
        param = float(m)
    elif convention == "modulus":
        param = float(m) ** 2
    else:
        raise ValueError(f"unknown elliptic convention {convention!r}")
    if not 0.0 <= param <= 1.0 or not 0.0 <= float(m) <= 1.0:
        raise ValueError(f"elliptic argument must lie in [0, 1], got {m!r}")
    return param


def _agm_sequence(param: float):
    """AGM sequences a_n, c_n starting from (1, sqrt(1 - m))."""
    a, b, c = 1.0, math.sqrt(1.0 - param), math.sqrt(param)
    a_seq, c_seq = [a], [c]
    for _ in range(_AGM_MAXITER):
        if abs(c) <= _AGM_TOL * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    else:  # pragma: no cover - the AGM converges quadratically for m < 1
        raise RuntimeError("AGM iteration did not converge")
    return a_seq, c_seq


def elliptic_K(m: float, convention: str = "parameter") -> float:
    """Complete elliptic integral of the first kind, ``K = pi / (2 AGM(1, k'))``."""
    param = to_parameter(m, convention)
    if param >= 1.0:
        raise ValueError("K diverges at m = 1")
    a_seq, _ = _agm_sequence(param)
    return math.pi / (2.0 * a_seq[-1])


def jacobi_sn_cn(u, m: float, convention: str = "parameter"):
    """Return ``(sn(u|m), cn(u|m))`` by the descending AGM / Landen scheme.

    Arguments are first reduced modulo the real period ``4K`` so accuracy does
    not degrade for large ``|u|``.
    """
    param = to_parameter(m, convention)
    u = np.asarray(u, dtype=float)
    if param == 0.0:
        return np.sin(u), np.cos(u)
    if param == 1.0:
        return np.tanh(u), 1.0 / np.cosh(u)

    a_seq, c_seq = _agm_sequence(param)
    period = 2.0 * math.pi / a_seq[-1]  # 4K
    u = np.remainder(u + 0.5 * period, period) - 0.5 * period

    n = len(a_seq) - 1
    phi = (2.0**n) * a_seq[-1] * u
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(np.clip(c_seq[j] / a_seq[j] * np.sin(phi), -1.0, 1.0)))
    return np.sin(phi), np.cos(phi)


def jacobi_sn(u, m: float, convention: str = "parameter"):
    sn, _ = jacobi_sn_cn(u, m, convention)
    return sn if sn.ndim else float(sn)


def real_cubic_roots(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of ``c3 x^3 + c2 x^2 + c1 x + c0`` in increasing order.

    Closed form (trigonometric branch when there are three real roots,
    Cardano otherwise) followed by Newton polishing of every root.
    """
    if c3 == 0:
        raise ValueError("leading coefficient must be nonzero")
    b, c, d = c2 / c3, c1 / c3, c0 / c3
    # depressed cubic t^3 + p t + q with x = t - b/3
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if p == 0.0 and q == 0.0:
        ts = [0.0]
    elif disc < 0.0:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        theta = math.acos(max(-1.0, min(1.0, arg)))
        ts = [r * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3)]
    else:
        s = math.sqrt(disc)
        t = math.copysign(abs(-q / 2.0 + s) ** (1 / 3), -q / 2.0 + s)
        t += math.copysign(abs(-q / 2.0 - s) ** (1 / 3), -q / 2.0 - s)
        ts = [t]
        if disc == 0.0:
            ts.append(-t / 2.0)

    roots = []
    for t in ts:
        x = t - shift
        for _ in range(3):
            f = ((c3 * x + c2) * x + c1) * x + c0
            df = (3.0 * c3 * x + 2.0 * c2) * x + c1
            if df == 0.0:
                break
            step = f / df
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        roots.append(x)
    return sorted(roots)
