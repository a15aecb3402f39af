"""
Best uniform approximation by trigonometric polynomials.

E_n(f) = inf ‖f − T‖_C over T of degree <= n−1. The discrete problem on a
grid is the linear program

    minimize ε  subject to  −ε <= f(x_j) − Φ(x_j)·c <= ε,

solved with HiGHS. Its optimum is a lower bound on E_n(f); the continuous
sup norm of the witness residual is an upper bound.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy.optimize import linprog, minimize_scalar

from ..core.norms import sup_norm
from ..core.sampling import Grid, SampledFunction
from ..fourier.trig import TrigPolynomial, fourier_coefficients, partial_sum
from ..utils.error_handler import EvaluationError, OptimizationError, PreconditionError
from ..utils.logger import get_logger

logger = get_logger(__name__)

# residual extrema at or above this share of the sup norm count as alternation points
ALTERNATION_LEVEL = 0.9


def trig_design(x: np.ndarray, degree: int) -> np.ndarray:
    """Columns 1, cos 2πx, sin 2πx, ..., cos 2π·degree·x, sin 2π·degree·x."""
    x = np.asarray(x, dtype=float)
    cols = [np.ones_like(x)]
    for k in range(1, degree + 1):
        cols.append(np.cos(2.0 * np.pi * k * x))
        cols.append(np.sin(2.0 * np.pi * k * x))
    return np.column_stack(cols)


def witness_from_columns(c: np.ndarray) -> TrigPolynomial:
    """TrigPolynomial with value c₀ + Σ (c_{2k−1} cos + c_{2k} sin)."""
    vector = np.asarray(c, dtype=float).copy()
    vector[0] *= 2.0
    return TrigPolynomial.from_vector(vector)


@dataclass(frozen=True)
class MinimaxSolution:
    coefficients: np.ndarray = field(compare=False)
    epsilon: float
    iterations: int
    message: str


def solve_discrete_minimax(F: np.ndarray, Phi: np.ndarray) -> MinimaxSolution:
    """
    min_c max_j |F_j − (Φc)_j| as an epigraph linear program.

    Raises:
        OptimizationError: the solver did not report an optimum; the trace
            carries its status and message
    """
    F = np.asarray(F, dtype=float)
    Phi = np.asarray(Phi, dtype=float)
    m, p = Phi.shape
    cost = np.zeros(p + 1)
    cost[-1] = 1.0
    ones = np.ones((m, 1))
    A_ub = np.vstack([np.hstack([Phi, -ones]), np.hstack([-Phi, -ones])])
    b_ub = np.concatenate([F, -F])
    bounds = [(None, None)] * p + [(0.0, None)]

    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        raise OptimizationError(
            f"discrete minimax program failed: {res.message}",
            trace={'status': int(res.status), 'message': str(res.message),
                   'iterations': int(getattr(res, 'nit', 0) or 0), 'rows': 2 * m, 'columns': p + 1}
        )
    return MinimaxSolution(np.asarray(res.x[:p]), float(res.x[-1]), int(getattr(res, 'nit', 0) or 0),
                           str(res.message))


def _values(f: Callable, x: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(x), dtype=float) * np.ones_like(x)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("non-finite value of the function being approximated")
    return vals


def _periodic_local_maxima(values: np.ndarray) -> np.ndarray:
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    return np.nonzero((values >= left) & (values > right))[0]


def alternation_count(residual: Callable, scan_points: int = 8192, level: float = ALTERNATION_LEVEL) -> int:
    """
    Sign alternations among residual extrema reaching level · max|residual|.

    The count is the length of the longest alternating run of extrema read
    around the period.
    """
    x = np.arange(scan_points) / scan_points
    r = np.asarray(residual(x), dtype=float)
    peak = np.max(np.abs(r))
    if peak == 0.0:
        return 0
    idx = _periodic_local_maxima(np.abs(r))
    idx = idx[np.abs(r[idx]) >= level * peak]
    if idx.size == 0:
        return 0
    signs = np.sign(r[idx])
    count = 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))
    # the first and last extremum are neighbours on the circle
    if count > 1 and signs[0] == signs[-1]:
        count -= 1
    return count


@dataclass(frozen=True)
class ApproxResult:
    """
    Best approximation of degree n−1 with two-sided bounds.

    En is the discrete minimax value (lower bound); upper is the continuous
    sup norm of the witness residual.
    """

    n: int
    En: float
    lower: float
    upper: float
    witness: TrigPolynomial
    grid_m: int
    refinement_passes: int
    certified_gap: float
    alternation_count: int
    argmax: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "En": self.En,
            "lower": self.lower,
            "upper": self.upper,
            "witness": self.witness.to_dict(),
            "method": {"grid_m": self.grid_m, "refinement_passes": self.refinement_passes},
            "certified_gap": self.certified_gap,
            "alternation_count": self.alternation_count,
            "argmax": self.argmax,
        }


def _refinement_points(f: Callable, witness: TrigPolynomial, grid_m: int, count: int, refine: float) -> np.ndarray:
    """Local maxima of |f − witness| between grid points, polished by bounded search."""
    fine = np.arange(8 * grid_m) / (8 * grid_m)
    resid = np.abs(_values(f, fine) - witness(fine))
    peaks = _periodic_local_maxima(resid)
    peaks = peaks[np.argsort(-resid[peaks], kind="stable")][:count]
    h = 1.0 / (8 * grid_m)
    points = []
    for i in peaks:
        lo, hi = fine[i] - h, fine[i] + h
        res = minimize_scalar(lambda s: -abs(float(_values(f, np.array([s % 1.0]))[0] - witness(s % 1.0))),
                              bounds=(lo, hi), method="bounded", options={'xatol': refine})
        points.append(float(res.x) % 1.0)
    return np.array(points)


def best_trig_approx(f: Callable[[np.ndarray], np.ndarray], n: int, grid_m: Optional[int] = None,
                     tol: float = 1e-9, refinement_passes: int = 1, grid_factor: int = 32,
                     warn_alternation: bool = True) -> ApproxResult:
    """
    E_n(f) with witness T_{n−1} and certified two-sided bounds.

    Args:
        f: 1-periodic function on [0, 1)
        n: the witness has degree n−1
        grid_m: discrete grid size, default grid_factor·n, at least 8n
        tol: refinement tolerance for the continuous sup norm
        refinement_passes: re-solves with residual maxima added to the grid

    Raises:
        PreconditionError: n < 1 or grid_m < 8n
        OptimizationError: solver failure
    """
    if n < 1:
        raise PreconditionError(f"best approximation needs n >= 1, got {n}")
    grid_m = grid_m or grid_factor * n
    if grid_m < 8 * n:
        raise PreconditionError(f"grid_m must be at least 8n = {8 * n}, got {grid_m}",
                                context={'n': n, 'grid_m': grid_m})

    degree = n - 1
    x = np.arange(grid_m) / grid_m
    F = _values(f, x)
    solution = solve_discrete_minimax(F, trig_design(x, degree))
    witness = witness_from_columns(solution.coefficients)

    for _ in range(refinement_passes):
        extra = _refinement_points(f, witness, grid_m, 4 * n + 4, tol)
        if extra.size == 0:
            break
        x = np.union1d(x, extra)
        F = _values(f, x)
        solution = solve_discrete_minimax(F, trig_design(x, degree))
        witness = witness_from_columns(solution.coefficients)

    def residual(t: np.ndarray) -> np.ndarray:
        return np.asarray(f(t), dtype=float) - witness(t)

    upper, argmax = sup_norm(residual, refine=tol)
    lower = max(solution.epsilon, 0.0)
    gap = max(upper - lower, 0.0)
    alternations = alternation_count(residual, max(8192, 8 * grid_m))
    if warn_alternation and upper > 1e-9 and alternations < 2 * n:
        logger.warning(f"E_{n}: residual alternates at {alternations} points, fewer than 2n = {2 * n}")
    logger.debug(f"E_{n}: lower={lower:.6e} upper={upper:.6e} gap={gap:.2e}")
    return ApproxResult(n, lower, lower, upper, witness.normalize(), grid_m, refinement_passes, gap,
                        alternations, argmax)


def rho_n(f: Callable[[np.ndarray], np.ndarray], n: int, K: Optional[int] = None, tol: float = 1e-10,
          grid_points: int = 1024) -> SampledFunction:
    """
    Samples of f − S_{n−1}(f) on a uniform periodic grid.

    Raises:
        PreconditionError: n < 1
    """
    if n < 1:
        raise PreconditionError(f"rho_n needs n >= 1, got {n}")
    coeffs = fourier_coefficients(f, K or max(n - 1, 1), tol)
    s = partial_sum(coeffs, n - 1)
    grid = Grid.uniform(grid_points, endpoint=False)
    values = _values(f, grid.points) - s(grid.points)
    return SampledFunction(grid, values, periodic=True)
