from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class DiscretizationGrid:
    """Uniform Dirichlet grid: ``n`` interior nodes, endpoints excluded."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)) or not self.x_min < self.x_max:
            raise DomainError(f"need finite x_min < x_max, got ({self.x_min}, {self.x_max})")
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"need an integer n >= 3 interior nodes, got {self.n}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.n + 1)

    @property
    def midpoints(self) -> np.ndarray:
        """The n-1 midpoints between consecutive interior nodes."""
        return self.x_min + self.h * (np.arange(1, self.n) + 0.5)

    @property
    def link_midpoints(self) -> np.ndarray:
        """All n+1 midpoints, including the two boundary links."""
        return self.x_min + self.h * (np.arange(0, self.n + 1) + 0.5)

    def midpoint_grid(self) -> "DiscretizationGrid":
        """Grid whose nodes are :attr:`midpoints` (same spacing)."""
        return DiscretizationGrid(self.x_min + 0.5 * self.h, self.x_max - 0.5 * self.h, self.n - 1)


def build_grid(x_min: float, x_max: float, n: int) -> DiscretizationGrid:
    return DiscretizationGrid(float(x_min), float(x_max), int(n))
