"""Scale grids for sweeps and table output."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError


def _clean(x):
    # strip representation noise such as 0.45000000000000001 from start + i*step
    return float(f"{x:.15g}")


@dataclass(frozen=True)
class GridSpec:
    """Strictly increasing grid from ``start`` up to at most ``stop``.

    Linear grids take either ``step`` or ``count``; logarithmic grids need
    ``count`` and a positive ``start``.
    """

    start: float
    stop: float
    step: Optional[float] = None
    count: Optional[int] = None
    spacing: str = "linear"

    def __post_init__(self):
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise DomainError("grid bounds must be finite")
        if not self.start < self.stop:
            raise DomainError(f"grid needs start < stop, got {self.start} >= {self.stop}")
        if self.spacing not in ("linear", "logarithmic"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        if (self.step is None) == (self.count is None):
            raise DomainError("give exactly one of step or count")
        if self.step is not None:
            if self.spacing != "linear":
                raise DomainError("logarithmic grids are specified by count")
            if not self.step > 0:
                raise DomainError("step must be positive")
        elif self.count < 2:
            raise DomainError("count must be at least 2")
        if self.spacing == "logarithmic" and self.start <= 0:
            raise DomainError("logarithmic grid needs start > 0")

    @classmethod
    def linear(cls, start, stop, step):
        return cls(start, stop, step=step)

    @classmethod
    def log(cls, start, stop, count):
        return cls(start, stop, count=count, spacing="logarithmic")

    def points(self) -> np.ndarray:
        if self.spacing == "logarithmic":
            pts = np.geomspace(self.start, self.stop, self.count)
            pts[0], pts[-1] = self.start, self.stop
            return pts
        if self.count is not None:
            return np.linspace(self.start, self.stop, self.count)
        n = int(np.floor((self.stop - self.start) / self.step * (1 + 1e-12))) + 1
        pts = np.array([_clean(self.start + i * self.step) for i in range(n)])
        pts = pts[pts <= self.stop]
        pts[0] = self.start
        return pts

    def __len__(self):
        return len(self.points())
