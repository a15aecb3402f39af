"""
Uniform norm estimation.
"""

from typing import Callable, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from ..utils.error_handler import DomainError, EvaluationError
from ..utils.logger import get_logger
from .sampling import SampledFunction

logger = get_logger(__name__)

Evaluable = Union[Callable[[np.ndarray], np.ndarray], SampledFunction]


def chebyshev_points(a: float, b: float, n: int) -> np.ndarray:
    """n points on [a, b] clustered at both ends, ends included."""
    j = np.arange(n)
    return a + (b - a) * 0.5 * (1.0 - np.cos(np.pi * j / (n - 1)))


def _abs_values(f: Callable, x: np.ndarray) -> np.ndarray:
    vals = np.abs(np.asarray(f(x), dtype=float)) * np.ones_like(x)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        raise EvaluationError("non-finite value while scanning for the maximum",
                              context={'x': float(x[np.argmax(bad)])})
    return vals


def sup_norm(f: Evaluable, refine: float = 1e-9, a: float = 0.0, b: float = 1.0,
             scan_points: int = 4096, candidates: int = 8) -> Tuple[float, float]:
    """
    max |f| on [a, b] and a point where it is attained.

    A Chebyshev-distributed scan picks the largest local maxima of |f|; each
    is polished by bounded Brent search to within refine. Sampled functions
    are measured on their own grid.

    Returns:
        (norm, argmax)

    Raises:
        EvaluationError: f produced a non-finite value
    """
    if isinstance(f, SampledFunction):
        vals = np.abs(f.values)
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("sampled function holds non-finite values")
        i = int(np.argmax(vals))
        return float(vals[i]), float(f.points[i])
    if not b > a:
        raise DomainError(f"sup_norm needs a < b, got [{a}, {b}]")

    x = chebyshev_points(a, b, max(scan_points, 3))
    vals = _abs_values(f, x)
    best = int(np.argmax(vals))
    norm, argmax = float(vals[best]), float(x[best])
    if norm == 0.0:
        return 0.0, argmax

    inner = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    peaks = np.nonzero(inner)[0] + 1
    order = peaks[np.argsort(-vals[peaks], kind="stable")][:candidates]

    def negative_abs(s: float) -> float:
        value = abs(float(np.asarray(f(np.array([s])), dtype=float).ravel()[0]))
        if not np.isfinite(value):
            raise EvaluationError("non-finite value while refining the maximum", context={'x': s})
        return -value

    for i in order:
        res = minimize_scalar(negative_abs, bounds=(x[i - 1], x[i + 1]), method="bounded",
                              options={'xatol': refine})
        if -res.fun > norm:
            norm, argmax = float(-res.fun), float(res.x)

    return norm, argmax
