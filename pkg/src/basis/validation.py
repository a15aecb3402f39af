"""
Finite-section diagnostics for a step system: leading-column monotonicity,
the empirical s(n) curve, inclinations between head and tail spans, and
coordinate projection norms.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..approx.minimax import solve_discrete_minimax, trig_design
from ..core.norms import sup_norm
from ..fourier.trig import TrigPolynomial
from ..utils.error_handler import DomainError
from ..utils.logger import ProgressLogger, get_logger
from .elimination import StepSystem
from .inclination import DIRECTIONS, inclination

logger = get_logger(__name__)

INCLINATION_THRESHOLD = 0.5
# LP optima of nested problems may differ by solver tolerance
_MONOTONE_SLACK = 1e-7


def ladder_errors(f: TrigPolynomial, n_max: int, grid_m: int) -> np.ndarray:
    """
    Discrete best-approximation errors of f by e₁..e_n for n = 1..n_max,
    with e the ladder 1, cos 2πx, sin 2πx, cos 4πx, …
    """
    x = np.arange(grid_m) / grid_m
    values = np.asarray(f(x))
    design = trig_design(x, (n_max + 1) // 2)
    return np.array([max(solve_discrete_minimax(values, design[:, :n]).epsilon, 0.0)
                     for n in range(1, n_max + 1)])


@dataclass(frozen=True)
class ProjectionNorm:
    j: int
    lower: float
    upper: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {"j": self.j, "lower": self.lower, "upper": self.upper}


@dataclass(frozen=True)
class BasisSectionReport:
    L: int
    lead_columns: Tuple[int, ...]
    m_strictly_increasing: bool
    n_values: Tuple[int, ...]
    s_curve: Tuple[float, ...]
    s_nonincreasing: bool
    inclinations: Tuple[float, ...]
    inclination_lower: Tuple[float, ...]
    inclination_floor: float
    meets_threshold: bool
    projection_norms: Tuple[ProjectionNorm, ...]
    probes: int
    seed: int
    grid_m: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L": self.L,
            "lead_columns": list(self.lead_columns),
            "m_strictly_increasing": self.m_strictly_increasing,
            "s_curve": [{"n": n, "s": s} for n, s in zip(self.n_values, self.s_curve)],
            "s_nonincreasing": self.s_nonincreasing,
            "inclinations": list(self.inclinations),
            "inclination_lower": list(self.inclination_lower),
            "inclination_floor": self.inclination_floor,
            "threshold": INCLINATION_THRESHOLD,
            "meets_threshold": self.meets_threshold,
            "projection_norms": [p.to_dict() for p in self.projection_norms],
            "probes": self.probes,
            "seed": self.seed,
            "grid_m": self.grid_m,
        }


def _combine(rows: Tuple[TrigPolynomial, ...], c: np.ndarray, degree: int) -> TrigPolynomial:
    return TrigPolynomial.from_vector(sum(ck * r.coefficient_vector(degree) for ck, r in zip(c, rows)))


def validate_basis_section(S: StepSystem, L: int, probes: int = 200, seed: int = 0x5EED,
                           grid_m: Optional[int] = None, directions: int = DIRECTIONS,
                           max_workers: int = 4) -> BasisSectionReport:
    """
    Diagnostics of the first L rows of S.

    Probes are unit-norm combinations Σ c_l r_l with standard-normal c drawn
    from per-probe substreams of the seed. s(n) is the largest discrete
    error of a probe's best approximation by e₁..e_n, for n from the first
    leading column to the top column of row L. Projection norms are the
    largest ‖Σ_{l<=j} c_l r_l‖ / ‖x‖ seen over the probes, with 1/inclination
    as the upper bound.

    Raises:
        DomainError: L outside [1, rows(S)] or probes < 1
    """
    if not 1 <= L <= len(S):
        raise DomainError(f"L must lie in [1, {len(S)}], got {L}")
    if probes < 1:
        raise DomainError(f"probes must be >= 1, got {probes}")

    section = S.section(L)
    rows = section.rows
    degree = max(r.degree for r in rows)
    grid_m = grid_m or max(256, 32 * (degree + 1))
    columns = section.lead_columns
    increasing = all(b > a for a, b in zip(columns, columns[1:]))
    if not increasing:
        logger.warning(f"leading columns are not strictly increasing: {list(columns)}")

    top_column = 2 * degree + 1
    n_values = tuple(range(columns[0], top_column + 1))
    children = np.random.SeedSequence(seed).spawn(probes)
    progress = ProgressLogger(probes, "Basis probes", logger)

    def probe(child: np.random.SeedSequence) -> Tuple[np.ndarray, np.ndarray]:
        c = np.random.default_rng(child).standard_normal(L)
        x = _combine(rows, c, degree)
        norm, _ = sup_norm(x)
        errors = ladder_errors(x, top_column, grid_m)[columns[0] - 1:] / norm
        heads = np.array([sup_norm(_combine(rows[:j], c[:j], degree))[0] / norm for j in range(1, L)])
        return errors, heads

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results: List[Tuple[np.ndarray, np.ndarray]] = []
        for result in pool.map(probe, children):
            results.append(result)
            progress.update()
    progress.complete()

    s_curve = np.max(np.array([errors for errors, _ in results]), axis=0)
    s_nonincreasing = bool(np.all(np.diff(s_curve) <= _MONOTONE_SLACK))

    def incline(j: int):
        return inclination(rows[:j], rows[j:], grid_m=grid_m, directions=directions, seed=seed + j)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        incl = list(pool.map(incline, range(1, L)))

    values = tuple(r.value for r in incl)
    lowers = tuple(r.lower for r in incl)
    floor = min(values) if values else 1.0
    if floor < INCLINATION_THRESHOLD:
        logger.info(f"inclination floor {floor:.4f} is below {INCLINATION_THRESHOLD}")

    head_norms = np.max(np.array([heads for _, heads in results]), axis=0) if L > 1 else np.zeros(0)
    projections = tuple(ProjectionNorm(j, float(head_norms[j - 1]), 1.0 / v if v > 0 else None)
                        for j, v in zip(range(1, L), values))

    return BasisSectionReport(L, columns, increasing, n_values, tuple(float(s) for s in s_curve),
                              s_nonincreasing, values, lowers, floor, floor >= INCLINATION_THRESHOLD,
                              projections, probes, seed, grid_m)
