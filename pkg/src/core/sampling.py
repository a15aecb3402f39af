"""
Sampling grids on [0, 1] and functions sampled on them.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict

import numpy as np

from ..utils.error_handler import DegenerateInputError, DomainError, ShapeError

SCHEMES = ("uniform", "endpoint-refined")


@dataclass(frozen=True)
class Grid:
    """Sorted distinct points of [0, 1] with a scheme tag."""

    points: np.ndarray = field(compare=False)
    scheme: str = "uniform"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown grid scheme '{self.scheme}'")
        if pts.ndim != 1 or pts.size == 0:
            raise DegenerateInputError("grid needs at least one point")
        if pts[0] < 0.0 or pts[-1] > 1.0:
            raise DomainError("grid points must lie in [0, 1]")
        if np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be sorted and distinct")
        if self.scheme == "uniform" and pts.size > 2:
            steps = np.diff(pts)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-15):
                raise DomainError("uniform grid must have constant spacing")

    @classmethod
    def uniform(cls, n: int, endpoint: bool = True) -> "Grid":
        """n equispaced points; with endpoint=False the point 1 is left out."""
        if n < 1:
            raise DegenerateInputError("grid needs at least one point")
        return cls(np.linspace(0.0, 1.0, n, endpoint=endpoint), "uniform")

    @classmethod
    def endpoint_refined(cls, n: int) -> "Grid":
        """Chebyshev-distributed points, dense near 0 and 1."""
        if n < 2:
            raise DegenerateInputError("endpoint-refined grid needs at least two points")
        j = np.arange(n)
        return cls(0.5 * (1.0 - np.cos(np.pi * j / (n - 1))), "endpoint-refined")

    def __len__(self) -> int:
        return int(self.points.size)

    def sample(self, f: Callable[[np.ndarray], np.ndarray], periodic: bool = False,
               periodic_tol: float = 1e-9) -> "SampledFunction":
        values = np.asarray(f(self.points), dtype=float) * np.ones(len(self))
        return SampledFunction(self, values, periodic, periodic_tol)


@dataclass(frozen=True)
class SampledFunction:
    """Values of a function on a grid; periodic ones agree at 0 and 1."""

    grid: Grid
    values: np.ndarray = field(compare=False)
    periodic: bool = False
    periodic_tol: float = 1e-9

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if vals.shape != self.grid.points.shape:
            raise ShapeError("values and grid differ in length",
                             context={'grid': len(self.grid), 'values': vals.size})
        pts = self.grid.points
        if self.periodic and pts[0] == 0.0 and pts[-1] == 1.0:
            scale = max(1.0, float(np.max(np.abs(vals))))
            if abs(vals[0] - vals[-1]) > self.periodic_tol * scale:
                raise DomainError("periodic samples differ at 0 and 1",
                                  context={'f(0)': float(vals[0]), 'f(1)': float(vals[-1])})

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.grid.scheme,
            "points": self.grid.points.tolist(),
            "values": self.values.tolist(),
            "periodic": self.periodic,
        }
