"""Empirical fit forms for ``e(s)`` and ``y_0 - y_{1/2}``, and a sigmoid refitter."""

import math
from dataclasses import astuple, dataclass

import numpy as np

from .errors import DomainError, FitConvergenceError
from .grid import GridSpec


@dataclass(frozen=True)
class SigmoidParams:
    plateau: float
    amplitude: float
    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"sigmoid width must be > 0, got {self.width!r}")

    def as_array(self):
        return np.array(astuple(self), dtype=float)


@dataclass(frozen=True)
class StretchedLogisticParams:
    center: float
    width: float
    exponent: float

    def __post_init__(self):
        if not (self.width > 0 and self.exponent > 0):
            raise DomainError("stretched logistic needs width > 0 and exponent > 0")


PUBLISHED_EFIT = SigmoidParams(plateau=1.00582, amplitude=0.71664, center=0.36712, width=0.10290)
PUBLISHED_DIFFIT = StretchedLogisticParams(center=0.45, width=0.088, exponent=1.29)
DEFAULT_INIT = SigmoidParams(plateau=1.0, amplitude=0.7, center=0.4, width=0.1)
FALLBACK_CENTERS = (0.3, 0.4, 0.5)


@dataclass(frozen=True)
class ResidualStats:
    sup_abs: float
    rms: float
    argmax: float
    n_points: int

    def as_dict(self):
        return {"sup_abs": self.sup_abs, "rms": self.rms, "argmax": self.argmax, "n_points": self.n_points}


def _fermi(z):
    """``1 / (1 + exp(z))`` without overflow; saturates to exactly 0 or 1."""
    z = np.asarray(z, dtype=float)
    with np.errstate(over="ignore"):
        ez = np.exp(-np.abs(z))
        return np.where(z >= 0, ez / (1.0 + ez), 1.0 / (1.0 + ez))


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


def efit(s, p=PUBLISHED_EFIT):
    """Boltzmann sigmoid ``plateau - amplitude / (1 + exp((s - center)/width))``."""
    z = (np.asarray(s, dtype=float) - p.center) / p.width
    return _scalar_or_array(p.plateau - p.amplitude * _fermi(z), s)


def diffit(s, p=PUBLISHED_DIFFIT):
    """Stretched logistic ``1 / (1 + exp(sgn(s-c) |(s-c)/w|**q))``; exactly 1/2 at ``s = c``."""
    d = np.asarray(s, dtype=float) - p.center
    u = np.sign(d) * np.abs(d / p.width) ** p.exponent
    return _scalar_or_array(_fermi(u), s)


def _residual_stats(points, diff):
    diff = np.asarray(diff, dtype=float)
    absdiff = np.abs(diff)
    i = int(np.argmax(absdiff))
    return ResidualStats(
        sup_abs=float(absdiff[i]),
        rms=float(math.sqrt(np.mean(diff * diff))),
        argmax=float(points[i]),
        n_points=len(points),
    )


def residual_report(candidate, truth, grid: GridSpec) -> ResidualStats:
    """Sup/rms of ``candidate - truth`` over the grid points."""
    pts = grid.points()
    diff = []
    for x in pts:
        c, t = float(candidate(x)), float(truth(x))
        if not (math.isfinite(c) and math.isfinite(t)):
            raise DomainError(f"non-finite value at s={float(x)!r}: candidate={c!r}, truth={t!r}")
        diff.append(c - t)
    return _residual_stats(pts, diff)


def _jacobian(theta, s):
    plateau, amplitude, center, width = theta
    z = (s - center) / width
    g = _fermi(z)
    dg = g * (1.0 - g)
    J = np.empty((s.size, 4))
    J[:, 0] = 1.0
    J[:, 1] = -g
    J[:, 2] = -amplitude * dg / width
    J[:, 3] = -amplitude * dg * z / width
    return plateau - amplitude * g, J


def _objective(theta, s, y):
    r = theta[0] - theta[1] * _fermi((s - theta[2]) / theta[3]) - y
    return float(r @ r)


def _levenberg_marquardt(theta, s, y, max_iter, rtol, trace):
    lam = 1e-3
    f, J = _jacobian(theta, s)
    r = f - y
    obj = float(r @ r)
    if trace is not None:
        trace.append(obj)
    for it in range(1, max_iter + 1):
        A = J.T @ J
        g = J.T @ r
        damped = A + lam * np.diag(np.maximum(np.diag(A), 1e-300))
        try:
            step = np.linalg.solve(damped, -g)
        except np.linalg.LinAlgError:
            lam *= 10.0
            continue
        trial = theta + step
        new_obj = _objective(trial, s, y) if trial[3] > 0 else math.inf
        rel_step = np.linalg.norm(step) / max(np.linalg.norm(theta), 1e-300)
        rel_drop = (obj - new_obj) / max(obj, 1e-300)
        if rel_step <= rtol and rel_drop <= rtol:
            if new_obj < obj:
                theta, obj = trial, new_obj
                if trace is not None:
                    trace.append(obj)
            return theta, obj, it, True
        if new_obj < obj:
            theta, obj = trial, new_obj
            if trace is not None:
                trace.append(obj)
            f, J = _jacobian(theta, s)
            r = f - y
            lam = max(lam / 3.0, 1e-12)
        else:
            lam = min(lam * 2.0, 1e300)
    return theta, obj, max_iter, False


def fit_sigmoid(samples, init=None, *, max_iter=10_000, rtol=1e-10, trace=None):
    """Unweighted least-squares fit of :func:`efit` to ``(s, y)`` samples.

    Damped Gauss-Newton (Levenberg-Marquardt); only objective-decreasing
    steps are accepted. Converged when the relative parameter step and the
    relative objective decrease are both at most ``rtol``. If the start at
    ``init`` (default ``DEFAULT_INIT``) fails, restarts from each center in
    ``FALLBACK_CENTERS`` before giving up.

    Returns ``(SigmoidParams, ResidualStats)``. ``trace``, if a list, receives
    the objective after every accepted step.
    """
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise DomainError("samples must be (s, y) pairs")
    if data.shape[0] < 5:
        raise DomainError(f"need at least 5 samples for a 4-parameter fit, got {data.shape[0]}")
    if not np.all(np.isfinite(data)):
        raise DomainError("samples must be finite")
    s, y = data[:, 0], data[:, 1]
    if np.unique(s).size != s.size:
        raise DomainError("sample abscissae must be distinct")

    init = DEFAULT_INIT if init is None else init
    starts = [init] + [
        SigmoidParams(init.plateau, init.amplitude, c, init.width) for c in FALLBACK_CENTERS if c != init.center
    ]
    best, best_obj = None, math.inf
    for start in starts:
        theta, obj, _, ok = _levenberg_marquardt(start.as_array(), s, y, max_iter, rtol, trace)
        if obj < best_obj:
            best, best_obj = theta, obj
        if ok:
            params = SigmoidParams(*map(float, theta))
            return params, _residual_stats(s, efit(s, params) - y)
    raise FitConvergenceError(
        f"sigmoid fit did not converge in {max_iter} iterations from {len(starts)} starts",
        SigmoidParams(*map(float, best)),
        best_obj,
    )
