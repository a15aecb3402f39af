"""
Inclination of one finite span of trigonometric polynomials to another:

    inf { dist_C(f, span B) : f ∈ span A, ‖f‖_C = 1 }.

Each inner distance is a discrete minimax program on a uniform periodic
grid. The outer infimum is searched from seeded random and coordinate
directions; the best few starts are polished with Nelder-Mead. The value
found there bounds the infimum from above.

The lower bound comes from anchored programs on a coarse grid of M points.
A unit vector f of degree n has grid norm at least cos(πn/M); rescaled by
its sign and grid norm it equals 1 at some grid point x_i and stays in
[−1, 1] on the grid. The smallest grid distance to span B over those
anchored polytopes, times cos(πn/M), bounds the infimum from below.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog, minimize

from ..approx.minimax import solve_discrete_minimax
from ..core.norms import sup_norm
from ..fourier.trig import TrigPolynomial
from ..utils.error_handler import DomainError, OptimizationError, RankError
from ..utils.logger import get_logger

logger = get_logger(__name__)

DIRECTIONS = 64
POLISHED_STARTS = 4
# anchors per unit degree on the lower-bound grid
LOWER_GRID_FACTOR = 8


@dataclass(frozen=True)
class InclinationResult:
    """
    Two-sided bounds on the inclination.

    value is the distance at the best direction found, an upper bound on
    the infimum. lower is the anchored-grid bound, valid over the whole unit
    sphere of span A, so [lower, value] brackets the infimum and
    certified_gap is its width.
    """

    value: float
    lower: float
    certified_gap: float
    direction: Tuple[float, ...]
    grid_m: int
    lower_grid_m: int
    norm_factor: float
    evaluations: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "lower": self.lower,
            "certified_gap": self.certified_gap,
            "direction": list(self.direction),
            "grid_m": self.grid_m,
            "lower_grid_m": self.lower_grid_m,
            "norm_factor": self.norm_factor,
            "evaluations": self.evaluations,
        }


def _values(polys: Sequence[TrigPolynomial], x: np.ndarray) -> np.ndarray:
    return np.column_stack([np.asarray(p(x)) for p in polys]) if polys else np.zeros((x.size, 0))


def _check_rank(values: np.ndarray, rank_tol: float, name: str) -> None:
    if values.shape[1] and np.linalg.matrix_rank(values, tol=rank_tol * max(1.0, np.abs(values).max())) < values.shape[1]:
        raise RankError(f"span {name} is degenerate on the grid", context={'size': values.shape[1]})


def anchored_lower_bound(VA: np.ndarray, VB: np.ndarray) -> float:
    """
    min over anchors i of the program

        minimize t  subject to  |VA·a − VB·b| <= t,  |VA·a| <= 1,  (VA·a)_i = 1.

    This is the exact grid inclination of span VA to span VB.

    Raises:
        OptimizationError: an anchored program ended in a state other than
            optimal or infeasible
    """
    m, p = VA.shape
    q = VB.shape[1]
    ones = np.ones((m, 1))
    zeros_b = np.zeros((m, q))
    zeros_t = np.zeros((m, 1))
    A_ub = np.vstack([
        np.hstack([VA, -VB, -ones]),
        np.hstack([-VA, VB, -ones]),
        np.hstack([VA, zeros_b, zeros_t]),
        np.hstack([-VA, zeros_b, zeros_t]),
    ])
    b_ub = np.concatenate([np.zeros(2 * m), np.ones(2 * m)])
    cost = np.zeros(p + q + 1)
    cost[-1] = 1.0
    bounds = [(None, None)] * (p + q) + [(0.0, None)]

    # anchors where every column of VA vanishes cannot reach 1 with |VA·a| <= 1
    floor = 1e-12 * max(1.0, float(np.max(np.abs(VA))))
    best = np.inf
    for i in range(m):
        if np.max(np.abs(VA[i])) <= floor:
            continue
        A_eq = np.concatenate([VA[i], np.zeros(q + 1)])[None, :]
        res = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
        if res.status == 2:
            continue
        if res.status != 0:
            raise OptimizationError(f"anchored program {i} failed: {res.message}",
                                    trace={'anchor': i, 'status': int(res.status), 'message': str(res.message)})
        best = min(best, float(res.fun))
    return best


def inclination(A: Sequence[TrigPolynomial], B: Sequence[TrigPolynomial], grid_m: Optional[int] = None,
                solver_tol: float = 1e-9, directions: int = DIRECTIONS, seed: int = 0x5EED,
                rank_tol: float = 1e-10, lower_grid_m: Optional[int] = None) -> InclinationResult:
    """
    Raises:
        RankError: span A is empty, or A or B is degenerate
        DomainError: lower_grid_m does not exceed twice the degree of span A
    """
    if not A:
        raise RankError("inclination needs a nonempty span A")
    degree = max(p.degree for p in list(A) + list(B))
    degree_a = max(p.degree for p in A)
    grid_m = grid_m or max(64, 32 * (degree + 1))
    lower_grid_m = lower_grid_m or min(grid_m, LOWER_GRID_FACTOR * (degree_a + 1))
    if lower_grid_m <= 2 * degree_a:
        raise DomainError(f"lower_grid_m must exceed {2 * degree_a}, got {lower_grid_m}")
    x = np.arange(grid_m) / grid_m
    VA, VB = _values(A, x), _values(B, x)
    _check_rank(VA, rank_tol, "A")
    _check_rank(VB, rank_tol, "B")
    norm_factor = float(np.cos(np.pi * degree_a / lower_grid_m))

    if not B:
        return InclinationResult(1.0, 1.0, 0.0, tuple([1.0] + [0.0] * (len(A) - 1)), grid_m, lower_grid_m,
                                 norm_factor, 0)

    evaluations = 0

    def objective(a: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        f = VA @ a
        norm = float(np.max(np.abs(f)))
        if norm < 1e-14:
            return np.inf
        return solve_discrete_minimax(f / norm, VB).epsilon

    dim = VA.shape[1]
    starts: List[np.ndarray] = list(np.eye(dim))
    if dim > 1:
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        starts.extend(rng.standard_normal((directions, dim)))
    scored = sorted(((objective(a), i) for i, a in enumerate(starts)), key=lambda t: (t[0], t[1]))
    best_value, best_a = scored[0][0], starts[scored[0][1]]

    if dim > 1:
        for _, i in scored[:POLISHED_STARTS]:
            res = minimize(objective, starts[i], method="Nelder-Mead",
                           options={'xatol': 1e-6, 'fatol': solver_tol, 'maxiter': 200 * dim})
            if res.fun < best_value:
                best_value, best_a = float(res.fun), np.asarray(res.x)

    best_a = best_a / np.max(np.abs(best_a))
    f = TrigPolynomial.from_vector(sum(a * p.coefficient_vector(degree) for a, p in zip(best_a, A)))
    f_norm, _ = sup_norm(f, refine=solver_tol)
    solution = solve_discrete_minimax(np.asarray(f(x)) / f_norm, VB)

    def residual(t: np.ndarray) -> np.ndarray:
        return np.asarray(f(t)) / f_norm - _values(B, np.atleast_1d(t)) @ solution.coefficients

    upper, _ = sup_norm(residual, refine=solver_tol)
    upper = min(upper, 1.0)

    x_lower = np.arange(lower_grid_m) / lower_grid_m
    anchored = anchored_lower_bound(_values(A, x_lower), _values(B, x_lower))
    lower = min(max(norm_factor * anchored, 0.0), upper) if np.isfinite(anchored) else 0.0
    logger.debug(f"inclination over {evaluations} evaluations and {lower_grid_m} anchors: "
                 f"[{lower:.6f}, {upper:.6f}]")
    return InclinationResult(upper, lower, upper - lower, tuple(float(v) for v in best_a), grid_m, lower_grid_m,
                             norm_factor, evaluations)
