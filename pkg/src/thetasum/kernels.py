"""Hot loops: compensated one-sided tails of the two lattice-sum series.

Both kernels take a scalar displacement ``a`` and arrays of scales ``s`` and
truncation indices ``kmax`` and return, per point, the tail that is added to
the k = 0 term:

* direct tail      ``sum_{k=1..K} exp(-((k+a)/s)**2) + exp(-((k-a)/s)**2)``
* transformed tail ``sum_{k=1..K} exp(-(pi*s*k)**2) * cos(2*pi*k*a)``

Accumulation is Neumaier-compensated in the fixed order +1, -1, +2, -2, ...
(transformed: 1, 2, 3, ...). The numba and numpy implementations perform the
same floating-point operations in the same order; they can still differ in
the last ulp because ``exp``/``cos`` come from different math libraries.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit

PI = math.pi


def _direct_tail_py(a, s, kmax):
    n = s.shape[0]
    out = np.empty(n)
    for i in range(n):
        si = s[i]
        total = 0.0
        comp = 0.0
        for k in range(1, kmax[i] + 1):
            for j in range(2):
                x = (k + a) / si if j == 0 else (k - a) / si
                t = math.exp(-(x * x))
                tmp = total + t
                if abs(total) >= abs(t):
                    comp += (total - tmp) + t
                else:
                    comp += (t - tmp) + total
                total = tmp
        out[i] = total + comp
    return out


def _transformed_tail_py(a, s, kmax):
    n = s.shape[0]
    out = np.empty(n)
    w = 2.0 * PI * a
    for i in range(n):
        si = s[i]
        total = 0.0
        comp = 0.0
        for k in range(1, kmax[i] + 1):
            x = PI * si * k
            t = math.exp(-(x * x)) * math.cos(w * k)
            tmp = total + t
            if abs(total) >= abs(t):
                comp += (total - tmp) + t
            else:
                comp += (t - tmp) + total
            total = tmp
        out[i] = total + comp
    return out


direct_tail_numba = njit(_direct_tail_py)
transformed_tail_numba = njit(_transformed_tail_py)


def _neumaier_step(total, comp, t):
    tmp = total + t
    big = np.abs(total) >= np.abs(t)
    comp = comp + np.where(big, (total - tmp) + t, (t - tmp) + total)
    return tmp, comp


# tiny s overflows (k+a)/s to inf; exp(-inf) = 0 is the right term
@np.errstate(over="ignore", under="ignore")
def direct_tail_numpy(a, s, kmax):
    s = np.asarray(s, dtype=np.float64)
    kmax = np.asarray(kmax, dtype=np.int64)
    total = np.zeros_like(s)
    comp = np.zeros_like(s)
    top = int(kmax.max()) if kmax.size else 0
    for k in range(1, top + 1):
        live = k <= kmax
        for shift in (a, -a):
            x = (k + shift) / s
            # masked lanes add an exact 0.0, which leaves (total, comp) unchanged
            t = np.where(live, np.exp(-(x * x)), 0.0)
            total, comp = _neumaier_step(total, comp, t)
    return total + comp


@np.errstate(over="ignore", under="ignore")
def transformed_tail_numpy(a, s, kmax):
    s = np.asarray(s, dtype=np.float64)
    kmax = np.asarray(kmax, dtype=np.int64)
    total = np.zeros_like(s)
    comp = np.zeros_like(s)
    top = int(kmax.max()) if kmax.size else 0
    w = 2.0 * PI * a
    for k in range(1, top + 1):
        x = PI * s * k
        t = np.where(k <= kmax, np.exp(-(x * x)) * math.cos(w * k), 0.0)
        total, comp = _neumaier_step(total, comp, t)
    return total + comp


if USE_NUMBA:
    direct_tail = direct_tail_numba
    transformed_tail = transformed_tail_numba
else:
    direct_tail = direct_tail_numpy
    transformed_tail = transformed_tail_numpy
