# cython: language_level=3
"""Compiled geometry kernel.

Same API as sewkit.kernel.reference; the package selects whichever backend
imports successfully (see sewkit/kernel/__init__.py).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

cdef double INF = float("inf")

cdef double GL_N[16]
cdef double GL_W[16]

_nodes = (
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.755404408355003, -0.6178762444026438, -0.45801677765722737,
    -0.2816035507792589, -0.09501250983763745, 0.09501250983763745,
    0.2816035507792589, 0.45801677765722737, 0.6178762444026438,
    0.755404408355003, 0.8656312023878318, 0.9445750230732326,
    0.9894009349916499,
)
_weights = (
    0.027152459411754037, 0.062253523938647706, 0.09515851168249259,
    0.12462897125553403, 0.14959598881657676, 0.16915651939500262,
    0.1826034150449236, 0.18945061045506859, 0.18945061045506859,
    0.1826034150449236, 0.16915651939500262, 0.14959598881657676,
    0.12462897125553403, 0.09515851168249259, 0.062253523938647706,
    0.027152459411754037,
)

cdef int _i
for _i in range(16):
    GL_N[_i] = _nodes[_i]
    GL_W[_i] = _weights[_i]

DEF GOLDEN = 0.6180339887498949


cdef inline void _point(const double* c, int k, double t, double* out) noexcept nogil:
    cdef double u = 1.0 - t
    if k == 3:
        out[0] = u * u * c[0] + 2.0 * u * t * c[2] + t * t * c[4]
        out[1] = u * u * c[1] + 2.0 * u * t * c[3] + t * t * c[5]
    else:
        out[0] = u * u * u * c[0] + 3.0 * u * u * t * c[2] + 3.0 * u * t * t * c[4] + t * t * t * c[6]
        out[1] = u * u * u * c[1] + 3.0 * u * u * t * c[3] + 3.0 * u * t * t * c[5] + t * t * t * c[7]


cdef inline void _deriv(const double* c, int k, double t, double* out) noexcept nogil:
    cdef double u = 1.0 - t
    if k == 3:
        out[0] = 2.0 * (u * (c[2] - c[0]) + t * (c[4] - c[2]))
        out[1] = 2.0 * (u * (c[3] - c[1]) + t * (c[5] - c[3]))
    else:
        out[0] = 3.0 * (u * u * (c[2] - c[0]) + 2.0 * u * t * (c[4] - c[2]) + t * t * (c[6] - c[4]))
        out[1] = 3.0 * (u * u * (c[3] - c[1]) + 2.0 * u * t * (c[5] - c[3]) + t * t * (c[7] - c[5]))


cdef inline double _speed(const double* c, int k, double t) noexcept nogil:
    cdef double d[2]
    _deriv(c, k, t, d)
    return sqrt(d[0] * d[0] + d[1] * d[1])


cdef inline double _curv(const double* c, int k, double t) noexcept nogil:
    cdef double d1[2]
    cdef double d2x, d2y, u, s2, den, cross
    _deriv(c, k, t, d1)
    if k == 3:
        d2x = 2.0 * (c[4] - 2.0 * c[2] + c[0])
        d2y = 2.0 * (c[5] - 2.0 * c[3] + c[1])
    else:
        u = 1.0 - t
        d2x = 6.0 * (u * (c[4] - 2.0 * c[2] + c[0]) + t * (c[6] - 2.0 * c[4] + c[2]))
        d2y = 6.0 * (u * (c[5] - 2.0 * c[3] + c[1]) + t * (c[7] - 2.0 * c[5] + c[3]))
    s2 = d1[0] * d1[0] + d1[1] * d1[1]
    den = s2 * sqrt(s2)
    if den <= 1e-30:
        return INF
    cross = fabs(d1[0] * d2y - d1[1] * d2x)
    return cross / den


cdef double _gl16(const double* c, int k, double a, double b) noexcept nogil:
    cdef double mid = 0.5 * (a + b)
    cdef double half = 0.5 * (b - a)
    cdef double acc = 0.0
    cdef int i
    for i in range(16):
        acc += GL_W[i] * _speed(c, k, mid + half * GL_N[i])
    return half * acc


cdef double _adaptive(const double* c, int k, double a, double b, double whole,
                      double tol, int depth) noexcept nogil:
    cdef double m = 0.5 * (a + b)
    cdef double left = _gl16(c, k, a, m)
    cdef double right = _gl16(c, k, m, b)
    if fabs(left + right - whole) <= tol or depth >= 24:
        return left + right
    return (_adaptive(c, k, a, m, left, 0.5 * tol, depth + 1)
            + _adaptive(c, k, m, b, right, 0.5 * tol, depth + 1))


cdef inline cnp.ndarray _ctrl_array(object ctrl):
    cdef cnp.ndarray c = np.ascontiguousarray(ctrl, dtype=np.float64)
    if c.ndim != 2 or c.shape[1] != 2 or c.shape[0] not in (3, 4):
        raise ValueError("control polygon must have shape (3, 2) or (4, 2)")
    return c


def bezier_points(ctrl, ts):
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef cnp.ndarray t = np.atleast_1d(np.ascontiguousarray(ts, dtype=np.float64))
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray out = np.empty((n, 2), dtype=np.float64)
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef double* td = <double*> cnp.PyArray_DATA(t)
    cdef double* od = <double*> cnp.PyArray_DATA(out)
    cdef int k = <int> c.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        _point(cd, k, td[i], od + 2 * i)
    return out


def bezier_derivatives(ctrl, ts):
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef cnp.ndarray t = np.atleast_1d(np.ascontiguousarray(ts, dtype=np.float64))
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray out = np.empty((n, 2), dtype=np.float64)
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef double* td = <double*> cnp.PyArray_DATA(t)
    cdef double* od = <double*> cnp.PyArray_DATA(out)
    cdef int k = <int> c.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        _deriv(cd, k, td[i], od + 2 * i)
    return out


def bezier_curvatures(ctrl, ts):
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef cnp.ndarray t = np.atleast_1d(np.ascontiguousarray(ts, dtype=np.float64))
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray out = np.empty(n, dtype=np.float64)
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef double* td = <double*> cnp.PyArray_DATA(t)
    cdef double* od = <double*> cnp.PyArray_DATA(out)
    cdef int k = <int> c.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        od[i] = _curv(cd, k, td[i])
    return out


def bezier_partial_length(ctrl, t, double rel_tol=1e-7):
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef double tt = <double> t
    if tt <= 0.0:
        return 0.0
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef int k = <int> c.shape[0]
    cdef double whole = _gl16(cd, k, 0.0, tt)
    cdef double tol = rel_tol * max(fabs(whole), 1e-30)
    return _adaptive(cd, k, 0.0, tt, whole, tol, 0)


def bezier_length(ctrl, double rel_tol=1e-7):
    return bezier_partial_length(ctrl, 1.0, rel_tol)


def bezier_param_at_length(ctrl, target, double rel_tol=1e-7):
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef int k = <int> c.shape[0]
    cdef double total = bezier_length(c, rel_tol)
    cdef double goal = <double> target
    if goal <= 0.0:
        return 0.0
    if goal >= total:
        return 1.0
    cdef double lo = 0.0, hi = 1.0
    cdef double t = goal / total
    cdef double tol = max(rel_tol * total, 1e-13)
    cdef double err, speed, step, whole
    cdef int it
    for it in range(100):
        whole = _gl16(cd, k, 0.0, t)
        err = _adaptive(cd, k, 0.0, t, whole, rel_tol * max(fabs(whole), 1e-30), 0) - goal
        if fabs(err) <= tol:
            return t
        if err > 0.0:
            hi = t
        else:
            lo = t
        speed = _speed(cd, k, t)
        if speed > 1e-12:
            step = t - err / speed
        else:
            step = 0.5 * (lo + hi)
        t = step if (lo < step < hi) else 0.5 * (lo + hi)
    return t


cdef double _golden_max(double* cd, int k, double a, double b):
    cdef double x1 = b - GOLDEN * (b - a)
    cdef double x2 = a + GOLDEN * (b - a)
    cdef double f1 = _curv(cd, k, x1)
    cdef double f2 = _curv(cd, k, x2)
    cdef int j
    for j in range(60):
        if b - a < 1e-12:
            break
        if f1 < f2:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + GOLDEN * (b - a)
            f2 = _curv(cd, k, x2)
        else:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - GOLDEN * (b - a)
            f1 = _curv(cd, k, x1)
    return f1 if f1 > f2 else f2


def bezier_max_curvature(ctrl, int samples=600):
    # refine every interior local maximum of the sampled curvature (top 8):
    # one bracket around the best sample misses spikes between samples of
    # a lower ridge
    cdef cnp.ndarray c = _ctrl_array(ctrl)
    cdef double* cd = <double*> cnp.PyArray_DATA(c)
    cdef int k = <int> c.shape[0]
    cdef cnp.ndarray buf = np.empty(samples, dtype=np.float64)
    cdef double* kap = <double*> cnp.PyArray_DATA(buf)
    cdef double best = -1.0
    cdef double t, refined
    cdef int i, ibest = 0
    for i in range(samples):
        t = i / <double> (samples - 1)
        kap[i] = _curv(cd, k, t)
        if kap[i] != kap[i] or kap[i] == INF:
            return INF
        if kap[i] > best:
            best = kap[i]
            ibest = i
    if best == 0.0:
        return 0.0
    cdef int npeaks = 0
    cdef cnp.ndarray pbuf = np.empty(samples, dtype=np.intc)
    cdef int* peaks = <int*> cnp.PyArray_DATA(pbuf)
    for i in range(1, samples - 1):
        if kap[i] >= kap[i - 1] and kap[i] >= kap[i + 1]:
            peaks[npeaks] = i
            npeaks += 1
    peaks[npeaks] = ibest
    npeaks += 1
    # crude top-8 selection; peak counts are tiny for cubics
    cdef int rounds = npeaks if npeaks < 8 else 8
    cdef int r, m, jbest
    cdef double a, b
    for r in range(rounds):
        jbest = -1
        for m in range(npeaks):
            if peaks[m] >= 0 and (jbest < 0 or kap[peaks[m]] > kap[peaks[jbest]]):
                jbest = m
        i = peaks[jbest]
        peaks[jbest] = -1
        a = (i - 1) / <double> (samples - 1)
        b = (i + 1) / <double> (samples - 1)
        if a < 0.0:
            a = 0.0
        if b > 1.0:
            b = 1.0
        refined = _golden_max(cd, k, a, b)
        if refined > best:
            best = refined
    return best
