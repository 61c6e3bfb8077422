"""Pure-Python (numpy) implementation of the geometry kernel.

Mirrors the API of the compiled kernel in ``_native.pyx``; the active
backend is selected in ``sewkit.kernel``.  Control polygons are float
arrays of shape (3, 2) for quadratic and (4, 2) for cubic curves, with
the endpoints included.
"""

from __future__ import annotations

import numpy as np

# 16-point Gauss-Legendre rule on [-1, 1].
_GL_NODES = np.array(
    (
        -0.9894009349916499,
        -0.9445750230732326,
        -0.8656312023878318,
        -0.755404408355003,
        -0.6178762444026438,
        -0.45801677765722737,
        -0.2816035507792589,
        -0.09501250983763745,
        0.09501250983763745,
        0.2816035507792589,
        0.45801677765722737,
        0.6178762444026438,
        0.755404408355003,
        0.8656312023878318,
        0.9445750230732326,
        0.9894009349916499,
    )
)
_GL_WEIGHTS = np.array(
    (
        0.027152459411754037,
        0.062253523938647706,
        0.09515851168249259,
        0.12462897125553403,
        0.14959598881657676,
        0.16915651939500262,
        0.1826034150449236,
        0.18945061045506859,
        0.18945061045506859,
        0.1826034150449236,
        0.16915651939500262,
        0.14959598881657676,
        0.12462897125553403,
        0.09515851168249259,
        0.062253523938647706,
        0.027152459411754037,
    )
)

_GOLDEN = 0.6180339887498949


def _as_ctrl(ctrl) -> np.ndarray:
    c = np.asarray(ctrl, dtype=float)
    if c.ndim != 2 or c.shape[1] != 2 or c.shape[0] not in (3, 4):
        raise ValueError("control polygon must have shape (3, 2) or (4, 2)")
    return c


def bezier_points(ctrl, ts) -> np.ndarray:
    c = _as_ctrl(ctrl)
    t = np.atleast_1d(np.asarray(ts, dtype=float))[:, None]
    u = 1.0 - t
    if c.shape[0] == 3:
        return u * u * c[0] + 2.0 * u * t * c[1] + t * t * c[2]
    return u**3 * c[0] + 3.0 * u * u * t * c[1] + 3.0 * u * t * t * c[2] + t**3 * c[3]


def bezier_derivatives(ctrl, ts) -> np.ndarray:
    c = _as_ctrl(ctrl)
    t = np.atleast_1d(np.asarray(ts, dtype=float))[:, None]
    u = 1.0 - t
    if c.shape[0] == 3:
        return 2.0 * (u * (c[1] - c[0]) + t * (c[2] - c[1]))
    return 3.0 * (
        u * u * (c[1] - c[0]) + 2.0 * u * t * (c[2] - c[1]) + t * t * (c[3] - c[2])
    )


def _second_derivatives(c: np.ndarray, t: np.ndarray) -> np.ndarray:
    t = t[:, None]
    if c.shape[0] == 3:
        d = 2.0 * (c[2] - 2.0 * c[1] + c[0])
        return np.broadcast_to(d, (t.shape[0], 2)).copy()
    return 6.0 * ((1.0 - t) * (c[2] - 2.0 * c[1] + c[0]) + t * (c[3] - 2.0 * c[2] + c[1]))


def bezier_curvatures(ctrl, ts) -> np.ndarray:
    c = _as_ctrl(ctrl)
    t = np.atleast_1d(np.asarray(ts, dtype=float))
    d1 = bezier_derivatives(c, t)
    d2 = _second_derivatives(c, t)
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    speed2 = d1[:, 0] ** 2 + d1[:, 1] ** 2
    denom = speed2 * np.sqrt(speed2)
    out = np.full(t.shape, np.inf)
    ok = denom > 1e-30
    out[ok] = np.abs(cross[ok]) / denom[ok]
    return out


def _composite_gl(c: np.ndarray, a: float, b: float, nseg: int) -> float:
    # Speed integrated with the 16-point rule on each of nseg sub-intervals.
    bounds = np.linspace(a, b, nseg + 1)
    mid = 0.5 * (bounds[1:] + bounds[:-1])
    half = 0.5 * (bounds[1:] - bounds[:-1])
    ts = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    d = bezier_derivatives(c, ts)
    speed = np.hypot(d[:, 0], d[:, 1]).reshape(nseg, 16)
    return float(np.sum(half * (speed @ _GL_WEIGHTS)))


def bezier_length(ctrl, rel_tol: float = 1e-7) -> float:
    return bezier_partial_length(ctrl, 1.0, rel_tol)


def bezier_partial_length(ctrl, t: float, rel_tol: float = 1e-7) -> float:
    c = _as_ctrl(ctrl)
    t = float(t)
    if t <= 0.0:
        return 0.0
    prev = _composite_gl(c, 0.0, t, 4)
    nseg = 8
    while True:
        cur = _composite_gl(c, 0.0, t, nseg)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-30) or nseg >= 4096:
            return cur
        prev = cur
        nseg *= 2


def bezier_param_at_length(ctrl, target: float, rel_tol: float = 1e-7) -> float:
    """Invert the cumulative-length function by safeguarded Newton/bisection."""
    c = _as_ctrl(ctrl)
    total = bezier_length(c, rel_tol)
    target = float(target)
    if target <= 0.0:
        return 0.0
    if target >= total:
        return 1.0
    lo, hi = 0.0, 1.0
    t = target / total
    tol = max(rel_tol * total, 1e-13)
    for _ in range(100):
        err = bezier_partial_length(c, t, rel_tol) - target
        if abs(err) <= tol:
            return t
        if err > 0.0:
            hi = t
        else:
            lo = t
        d = bezier_derivatives(c, np.array([t]))[0]
        speed = float(np.hypot(d[0], d[1]))
        if speed > 1e-12:
            step = t - err / speed
        else:
            step = 0.5 * (lo + hi)
        t = step if lo < step < hi else 0.5 * (lo + hi)
    return t


def _curvature_scalar(c: np.ndarray, t: float) -> float:
    return float(bezier_curvatures(c, np.array([t]))[0])


def _golden_max(c: np.ndarray, a: float, b: float) -> float:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = _curvature_scalar(c, x1)
    f2 = _curvature_scalar(c, x2)
    for _ in range(60):
        if b - a < 1e-12:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = _curvature_scalar(c, x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = _curvature_scalar(c, x1)
    return max(f1, f2)


def bezier_max_curvature(ctrl, samples: int = 600) -> float:
    """Sampled scan with golden-section refinement around each local peak.

    A single bracket around the best sample can miss a sharp spike whose
    samples sit below another, flatter ridge; every interior local
    maximum (capped at the 8 highest) gets its own refinement.
    """
    c = _as_ctrl(ctrl)
    ts = np.linspace(0.0, 1.0, samples)
    kappa = bezier_curvatures(c, ts)
    if not np.all(np.isfinite(kappa)):
        return float(np.max(kappa))
    best = float(np.max(kappa))
    if best == 0.0:
        return best
    interior = (kappa[1:-1] >= kappa[:-2]) & (kappa[1:-1] >= kappa[2:])
    peaks = set(np.nonzero(interior)[0] + 1)
    peaks.add(int(np.argmax(kappa)))
    for i in sorted(peaks, key=lambda j: -kappa[j])[:8]:
        a = ts[max(i - 1, 0)]
        b = ts[min(i + 1, samples - 1)]
        best = max(best, _golden_max(c, a, b))
    return best
