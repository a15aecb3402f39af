"""
Rate and asymptotic experiments built on best approximation.

rate_experiment measures E_n over a seeded family of periodized Müntz
functions of unit norm and tracks the statistic E_n·n^γ/ln n; its running
maximum is the empirical constant ω.

asymptotic_check compares Σ n^(−α) sin 2πnx and Σ n^(−α) cos 2πnx with
their leading terms (2πx)^(α−1) Γ(1−α) cos(πα/2) and
(2πx)^(α−1) Γ(1−α) sin(πα/2), fitting c + μ·x^α to what remains.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.stats import linregress

from ..core.exponents import ExponentSequence, check_gap_condition
from ..core.muntz import MuntzPolynomial
from ..core.norms import sup_norm
from ..muntz_ops.periodize import periodize
from ..utils.error_handler import DomainError, PreconditionError
from ..utils.logger import ProgressLogger, get_logger
from ..weil.kernel import dpsi_kernel
from ..weil.psi import PsiWeight
from .minimax import best_trig_approx

logger = get_logger(__name__)

DEFAULT_SEED = 0x5EED
DEFAULT_RHO = 0.9

# share of rows, taken from the large-n end, used for the trend fit
TREND_QUARTILE = 0.25


@dataclass(frozen=True)
class RateRow:
    n: int
    En: float
    lower: float
    upper: float
    statistic: float
    running_max: float

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "En": self.En, "lower": self.lower, "upper": self.upper,
                "statistic": self.statistic, "running_max": self.running_max}


@dataclass(frozen=True)
class RateReport:
    """Table of E_n·n^γ/ln n with its running maximum and tail trend."""

    gamma: float
    rows: Tuple[RateRow, ...]
    omega: float
    slope: float
    stderr: float
    trend_nonincreasing: bool
    functions: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": self.gamma,
            "rows": [row.to_dict() for row in self.rows],
            "omega": self.omega,
            "trend": {"slope": self.slope, "stderr": self.stderr, "nonincreasing": self.trend_nonincreasing},
            "functions": self.functions,
        }


def _trend(ns: np.ndarray, stats: np.ndarray) -> Tuple[float, float]:
    """Least-squares slope of the statistic against ln n over the last quartile."""
    count = min(len(ns), max(3, math.ceil(TREND_QUARTILE * len(ns))))
    if count < 2:
        return 0.0, 0.0
    x = np.log(ns[-count:])
    y = stats[-count:]
    if np.ptp(y) == 0.0:
        return 0.0, 0.0
    fit = linregress(x, y)
    stderr = float(fit.stderr) if np.isfinite(fit.stderr) else 0.0
    return float(fit.slope), stderr


def rate_statistics(functions: Sequence[Callable[[np.ndarray], np.ndarray]], gamma: float,
                    n_list: Sequence[int], grid_factor: int = 32, refinement_passes: int = 1,
                    tol: float = 1e-9, max_workers: int = 4) -> RateReport:
    """
    E_n of a function family (max over members) and the statistic E_n·n^γ/ln n.

    Each n is solved independently; rows are merged by n.
    """
    if not 0.0 < gamma < 1.0:
        raise PreconditionError(f"gamma must lie in (0, 1), got {gamma}")
    ns = sorted({int(n) for n in n_list})
    if not ns or ns[0] < 2:
        raise PreconditionError("n_list must contain integers n >= 2", context={'n_list': list(n_list)})
    if not functions:
        raise PreconditionError("rate statistics need at least one function")

    progress = ProgressLogger(len(ns), "Rate sweep", logger)

    def solve(n: int) -> Tuple[int, Tuple[float, float, float]]:
        results = [best_trig_approx(f, n, grid_factor=grid_factor, tol=tol,
                                    refinement_passes=refinement_passes, warn_alternation=False)
                   for f in functions]
        worst = max(results, key=lambda r: r.En)
        return n, (worst.En, worst.lower, max(r.upper for r in results))

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        solved: Dict[int, Tuple[float, float, float]] = {}
        for n, values in pool.map(solve, ns):
            solved[n] = values
            progress.update()
    progress.complete()

    rows: List[RateRow] = []
    running = 0.0
    for n in ns:
        En, lower, upper = solved[n]
        statistic = En * n ** gamma / math.log(n)
        running = max(running, statistic)
        rows.append(RateRow(n, En, lower, upper, statistic, running))

    slope, stderr = _trend(np.array(ns, dtype=float), np.array([r.statistic for r in rows]))
    nonincreasing = slope <= stderr
    if not nonincreasing:
        logger.warning(f"rate statistic trend slope {slope:.3e} exceeds its stderr {stderr:.3e}")
    return RateReport(gamma, tuple(rows), running, slope, stderr, nonincreasing, len(functions))


def sample_coefficients(seq: ExponentSequence, terms: int, rho: float = DEFAULT_RHO,
                        seed: int = DEFAULT_SEED, samples: int = 1) -> List[MuntzPolynomial]:
    """
    Müntz polynomials with a_n = ± ρ^n / λ_n over the first `terms` exponents.

    Signs come from independent substreams of the seed, one per sample.
    """
    lam = np.asarray(seq.exponents[:terms])
    n = np.arange(1, lam.size + 1)
    magnitudes = rho ** n / lam
    polys = []
    for child in np.random.SeedSequence(seed).spawn(samples):
        signs = np.random.default_rng(child).choice([-1.0, 1.0], size=lam.size)
        polys.append(MuntzPolynomial.from_coefficients(lam, signs * magnitudes))
    return polys


def rate_experiment(seq: ExponentSequence, gamma: float, n_list: Sequence[int],
                    config: Optional[Dict[str, Any]] = None,
                    polynomials: Optional[Sequence[MuntzPolynomial]] = None,
                    samples: int = 1, rho: float = DEFAULT_RHO, terms: int = 64) -> RateReport:
    """
    Empirical check of E_n(v) <= ω n^(−γ) ln n on unit-norm periodized Müntz functions.

    Raises:
        PreconditionError: the sequence fails the gap or Müntz condition,
            gamma is outside (0, 1), or some n < 2
    """
    config = config or {}
    holds, alpha0 = check_gap_condition(seq)
    if not holds:
        raise PreconditionError("exponent sequence fails the gap condition", context={'alpha0': alpha0})
    if not seq.muntz_condition_holds:
        raise PreconditionError("exponent sequence fails the Müntz condition",
                                context={'alpha1': seq.alpha1, 'tail': seq.tail_bound})

    if polynomials is None:
        polynomials = sample_coefficients(seq, terms, rho, int(config.get('seed', DEFAULT_SEED)), samples)

    functions = []
    for p in polynomials:
        v = periodize(p)
        norm, _ = sup_norm(v, refine=float(config.get('sup_refine', 1e-9)))
        if norm == 0.0:
            logger.warning("skipping a test function with zero norm after periodization")
            continue
        functions.append(lambda t, v=v, norm=norm: v(t) / norm)

    return rate_statistics(functions, gamma, n_list,
                           grid_factor=int(config.get('grid_factor', 32)),
                           refinement_passes=int(config.get('refinement_passes', 1)),
                           tol=float(config.get('sup_refine', 1e-9)),
                           max_workers=int(config.get('max_workers', 4)))


@dataclass(frozen=True)
class AsymptoticRow:
    x: float
    partial_sum_sin: float
    partial_sum_cos: float
    asymptote_sin: float
    asymptote_cos: float
    residual_sin: float
    residual_cos: float
    tail_bound: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class AsymptoticReport:
    """Partial sums against leading terms with fitted c + μx^α (sine) and c + νx^α (cosine)."""

    alpha: float
    K: int
    rows: Tuple[AsymptoticRow, ...]
    mu: float
    nu: float
    constant_sin: float
    constant_cos: float
    max_relative_residual_sin: float
    max_relative_residual_cos: float
    tail_certified: bool

    @property
    def accuracy_flag(self) -> bool:
        return not self.tail_certified

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "K": self.K,
            "rows": [row.to_dict() for row in self.rows],
            "mu": self.mu,
            "nu": self.nu,
            "constant_sin": self.constant_sin,
            "constant_cos": self.constant_cos,
            "max_relative_residual_sin": self.max_relative_residual_sin,
            "max_relative_residual_cos": self.max_relative_residual_cos,
            "tail_certified": self.tail_certified,
        }


def leading_terms(alpha: float, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(sine, cosine) leading terms; both share (2πx)^(α−1) Γ(1−α)."""
    common = (2.0 * np.pi * np.asarray(x, dtype=float)) ** (alpha - 1.0) * gamma_fn(1.0 - alpha)
    return common * math.cos(math.pi * alpha / 2.0), common * math.sin(math.pi * alpha / 2.0)


def asymptotic_check(alpha: float, x_list: Sequence[float], K: int = 10 ** 6,
                     certify_tol: float = 1e-6) -> AsymptoticReport:
    """
    Σ_{n<=K} n^(−α) sin/cos 2πnx, completed by a summation-by-parts tail,
    against the leading asymptotic terms.

    Raises:
        DomainError: alpha outside (0, 1) or some x outside (0, 1/4)
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    xs = np.array(sorted(float(x) for x in x_list))
    if xs.size < 2 or xs[0] <= 0.0 or xs[-1] >= 0.25:
        raise DomainError("x_list needs at least two points in (0, 1/4)", context={'x_list': list(x_list)})

    # sin θ = cos(θ − π/2): the sine series is the kernel with β = −1
    cos_weight = PsiWeight.power(alpha, beta=0.0, K=K)
    sin_weight = PsiWeight.power(alpha, beta=-1.0, K=K)
    sums_sin, sums_cos, bounds = [], [], []
    for x in xs:
        s = dpsi_kernel(sin_weight, x, tol=certify_tol, K_prime=K, max_terms=K)
        c = dpsi_kernel(cos_weight, x, tol=certify_tol, K_prime=K, max_terms=K)
        sums_sin.append(s.value)
        sums_cos.append(c.value)
        bounds.append(max(s.tail_bound, c.tail_bound))
    sums_sin, sums_cos = np.array(sums_sin), np.array(sums_cos)
    lead_sin, lead_cos = leading_terms(alpha, xs)

    design = np.column_stack([np.ones_like(xs), xs ** alpha])
    (c_sin, mu), *_ = np.linalg.lstsq(design, sums_sin - lead_sin, rcond=None)
    (c_cos, nu), *_ = np.linalg.lstsq(design, sums_cos - lead_cos, rcond=None)
    resid_sin = (sums_sin - lead_sin - design @ np.array([c_sin, mu])) / np.abs(lead_sin)
    resid_cos = (sums_cos - lead_cos - design @ np.array([c_cos, nu])) / np.abs(lead_cos)

    tail_certified = bool(bounds[0] < certify_tol)
    if not tail_certified:
        logger.warning(f"tail bound {bounds[0]:.2e} at x={xs[0]:g} exceeds {certify_tol:.0e}; raise K")

    rows = tuple(AsymptoticRow(float(x), float(ss), float(sc), float(ls), float(lc), float(rs), float(rc), float(b))
                 for x, ss, sc, ls, lc, rs, rc, b in zip(xs, sums_sin, sums_cos, lead_sin, lead_cos,
                                                         resid_sin, resid_cos, bounds))
    return AsymptoticReport(alpha, K, rows, float(mu), float(nu), float(c_sin), float(c_cos),
                            float(np.max(np.abs(resid_sin))), float(np.max(np.abs(resid_cos))), tail_certified)
