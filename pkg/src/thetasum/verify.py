"""Reference oracle and the numerical checks that certify the evaluators."""

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import core
from .grid import GridSpec

SQRT_PI = math.sqrt(math.pi)
#: Evaluation tolerance used inside the checks (not the pass threshold).
EVAL_TOL = 1e-15
ORACLE_RTOL = 1e-13
#: Bound margins are reported in decades; any finite count is a strict pass.
FINITE_DECADES = sys.float_info.max

DEFAULT_LOG_GRID = GridSpec.log(0.05, 20.0, 60)
DEFAULT_BOUNDS_GRID = GridSpec.linear(0.01, 10.0, 0.01)
DEFAULT_DISPLACEMENTS = (0.0, 0.1, 0.25, 0.5)


class OracleMismatch(RuntimeError):
    def __init__(self, a, s, direct, transformed):
        self.a, self.s, self.direct, self.transformed = a, s, direct, transformed
        super().__init__(
            f"oracle representations disagree at a={a!r}, s={s!r}: direct={direct!r}, transformed={transformed!r}"
        )


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    worst_residual: float
    worst_point: tuple
    threshold: float
    details: dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "worst_point": list(self.worst_point),
            "threshold": self.threshold,
            "details": self.details,
        }


def _report(name, residuals, points, threshold, details=None):
    residuals = np.asarray(residuals, dtype=float)
    i = int(np.argmax(np.where(np.isnan(residuals), np.inf, residuals)))
    worst = float(residuals[i])
    return CheckReport(name, bool(worst <= threshold), worst, points[i], float(threshold), details or {})


def oracle_eval(a, s):
    """Brute-force ``y_a(s)`` with exactly rounded summation (``math.fsum``).

    Sums ``|k| <= max(64, ceil(40 s))`` directly. For ``s > 2`` the dual
    series is also summed to ``k = 64``; the two must agree to 1e-13
    relative and the dual value is returned.
    """
    a = core.canonicalize_displacement(a)
    s = float(s)
    if s < 0:
        raise core.DomainError(f"scale must be >= 0, got {s!r}")
    if s == 0:
        return 1.0 if a == 0 else 0.0
    K = max(64, math.ceil(40 * s))
    direct = math.fsum(math.exp(-(((k + a) / s) ** 2)) for k in range(-K, K + 1))
    if s <= 2:
        return direct
    inner = math.fsum(
        [1.0] + [2.0 * math.exp(-((math.pi * s * k) ** 2)) * math.cos(2 * math.pi * k * a) for k in range(1, 65)]
    )
    transformed = SQRT_PI * s * inner
    if abs(direct - transformed) > ORACLE_RTOL * abs(transformed):
        raise OracleMismatch(a, s, direct, transformed)
    return transformed


def check_functional_equation(grid=DEFAULT_LOG_GRID, tol=1e-12):
    """Worst ``|y0(s) - sqrt(pi) s y0(1/(pi s))| / (1 + y0(s))``.

    Both sides use the direct series, at ``s`` and at the dual scale, so the
    two sides are independent sums.
    """
    pts = grid.points()
    res = []
    for s in pts:
        lhs = core.eval_direct(0.0, s, EVAL_TOL).value
        rhs = SQRT_PI * s * core.eval_direct(0.0, 1.0 / (math.pi * s), EVAL_TOL).value
        res.append(abs(lhs - rhs) / (1.0 + lhs))
    return _report("functional_equation", res, [(float(s),) for s in pts], tol)


def check_poisson_identity(a, grid=DEFAULT_LOG_GRID, tol=1e-12):
    """Direct versus transformed series at displacement ``a``.

    The residual is the disagreement minus both truncation bounds, so the
    check passes when ``|direct - transformed| <= tol + bounds`` everywhere.
    """
    pts = grid.points()
    res, raw = [], []
    for s in pts:
        d = core.eval_direct(a, s, EVAL_TOL)
        t = core.eval_transformed(a, s, EVAL_TOL)
        gap = abs(d.value - t.value)
        raw.append(gap)
        res.append(gap - (d.truncation_bound + t.truncation_bound))
    report = _report(f"poisson_identity[a={a:g}]", res, [(float(s), float(a)) for s in pts], tol)
    return CheckReport(
        report.name, report.passed, max(report.worst_residual, 0.0), report.worst_point, report.threshold,
        {"max_abs_gap": float(max(raw))},
    )


def check_bounds(grid=DEFAULT_BOUNDS_GRID):
    """Strict ``sqrt(pi) s < y0(s) < sqrt(pi) s + 2`` over the grid.

    Margins are measured in decades: the residual at a point is
    ``-log10(min(lower_margin, upper_margin))``, finite exactly when both
    margins are strictly positive. The lower margin is taken from
    :func:`core.log_excess`, so margins far below the double range (about
    1e-428 at s = 10) still count.
    """
    pts = grid.points()
    res, lows, highs = [], [], []
    for s in pts:
        log_low = core.log_excess(s, EVAL_TOL)
        upper = 2.0 - math.exp(log_low)
        log_high = math.log(upper) if upper > 0 else -math.inf
        lows.append(log_low)
        highs.append(upper)
        res.append(-min(log_low, log_high) / math.log(10))
    i = int(np.argmin(lows))
    details = {
        "min_lower_margin_log10": lows[i] / math.log(10),
        "min_lower_margin_at": float(pts[i]),
        "min_upper_margin": float(min(highs)),
    }
    return _report("bounds", res, [(float(s),) for s in pts], FINITE_DECADES, details)


def check_limits(tol_small=1e-12, tol_large=0.006, tol_ratio=0.01):
    """Finite-point proxies for the two asymptotic regimes of ``e(s)``.

    * ``|y0(0.05) - 1| <= tol_small``
    * ``|e(0.4) / (sqrt(pi) 0.4) - 1| <= tol_ratio``
    * ``|e(0.8) - 1| <= tol_large`` and ``|e(s) - 1|`` non-increasing on [0.8, 5]

    The residual is the largest ratio of measured value to its threshold, so
    the report passes at threshold 1.
    """
    small = abs(core.eval_auto(0.0, 0.05, EVAL_TOL).value - 1.0)
    ratio = abs(core.e_of_s(0.4, EVAL_TOL) / (SQRT_PI * 0.4) - 1.0)
    large = abs(core.e_of_s(0.8, EVAL_TOL) - 1.0)
    tail = [core.log_excess(s, EVAL_TOL) for s in GridSpec.linear(0.8, 5.0, 0.05).points()]
    monotone = bool(np.all(np.diff(tail) < 0))
    normalized = [small / tol_small, ratio / tol_ratio, large / tol_large, 0.0 if monotone else math.inf]
    points = [(0.05,), (0.4,), (0.8,), (0.8, 5.0)]
    details = {"small_s_gap": small, "small_s_ratio_gap": ratio, "large_s_gap": large, "monotone_beyond_0.8": monotone}
    return _report("limits", normalized, points, 1.0, details)


def check_oracle_agreement(displacements=DEFAULT_DISPLACEMENTS, grid=DEFAULT_LOG_GRID, tol=1e-12):
    """``|oracle - eval_auto|`` beyond the reported truncation bound, relative to ``1 + value``."""
    res, points = [], []
    for a in displacements:
        for s in grid.points():
            rep = core.eval_auto(a, s, EVAL_TOL)
            ref = oracle_eval(a, s)
            res.append(max(abs(ref - rep.value) - rep.truncation_bound, 0.0) / (1.0 + abs(ref)))
            points.append((float(s), float(a)))
    return _report("oracle_agreement", res, points, tol)


def run_suite(tol=1e-12):
    """Every check at pass threshold ``tol`` where a tolerance applies."""
    reports = [check_functional_equation(tol=tol)]
    reports += [check_poisson_identity(a, tol=tol) for a in DEFAULT_DISPLACEMENTS]
    reports += [check_bounds(), check_limits(tol_small=tol), check_oracle_agreement(tol=tol)]
    return reports
