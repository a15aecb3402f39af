"""
Exponent-shift operators and their error bound.

A plan moves every exponent μ_n of a Müntz polynomial to μ_n + Δ_n with
Δ_n >= 0, keeping coefficients. With m the first index where Δ_m > 0,

    ‖p − p₁‖_C <= 4 ‖p‖_C Δ_m / λ_m.

The bound is asserted on admissible inputs (single monomials, nonnegative
coefficients, or Σ|a_n| <= 2‖p‖_C); other inputs run in observe mode, where
a violation is logged.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.exponents import ExponentSequence
from ..core.muntz import MuntzPolynomial
from ..core.norms import sup_norm
from ..utils.error_handler import DegenerateInputError, DomainError, ShapeError
from ..utils.logger import get_logger

logger = get_logger(__name__)

_MATCH_RTOL = 1e-12


@dataclass(frozen=True)
class ExponentShiftPlan:
    """Source and target exponents of one shift step."""

    source: Tuple[float, ...]
    target: Tuple[float, ...]

    def __post_init__(self) -> None:
        source = tuple(float(v) for v in self.source)
        target = tuple(float(v) for v in self.target)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        if len(source) != len(target):
            raise ShapeError("plan source and target differ in length",
                             context={'source': len(source), 'target': len(target)})
        deltas = np.subtract(target, source)
        if np.any(deltas < 0):
            raise DomainError("exponent shifts must be nonnegative",
                              context={'first_negative': int(np.argmax(deltas < 0)) + 1})
        nonzero = deltas[deltas != 0]
        if np.any(np.diff(nonzero) > 0):
            raise DomainError("nonzero shifts must be nonincreasing in index order")

    @classmethod
    def from_shifts(cls, source: Sequence[float], shifts: Sequence[float]) -> "ExponentShiftPlan":
        return cls(tuple(source), tuple(float(s) + float(d) for s, d in zip(source, shifts)))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExponentShiftPlan":
        return cls(tuple(data["source"]), tuple(data["target"]))

    @property
    def deltas(self) -> np.ndarray:
        return np.subtract(self.target, self.source)

    @property
    def m(self) -> Optional[int]:
        """1-based index of the first nonzero shift; None for the identity plan."""
        nz = np.nonzero(self.deltas)[0]
        return int(nz[0]) + 1 if nz.size else None

    @property
    def delta_m(self) -> float:
        m = self.m
        return 0.0 if m is None else float(self.deltas[m - 1])

    def to_dict(self) -> Dict[str, Any]:
        return {"source": list(self.source), "target": list(self.target), "m": self.m, "delta_m": self.delta_m}


def is_admissible(p: MuntzPolynomial, norm: float) -> bool:
    coeffs = p.coefficients
    return len(p) == 1 or bool(np.all(coeffs >= 0)) or float(np.sum(np.abs(coeffs))) <= 2.0 * norm


@dataclass(frozen=True)
class ShiftResult:
    p1: MuntzPolynomial
    bound: float
    actual: float
    norm: float
    m: Optional[int]
    delta_m: float
    lambda_m: Optional[float]
    admissible: bool
    bound_ok: bool

    @property
    def mode(self) -> str:
        return "assert" if self.admissible else "observe"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p1": self.p1.to_dict(),
            "bound": self.bound,
            "actual": self.actual,
            "norm": self.norm,
            "m": self.m,
            "delta_m": self.delta_m,
            "lambda_m": self.lambda_m,
            "admissible": self.admissible,
            "mode": self.mode,
            "bound_ok": self.bound_ok,
        }


def exponent_shift_operator(p: MuntzPolynomial, plan: ExponentShiftPlan,
                            reference: Optional[ExponentSequence] = None,
                            refine: float = 1e-9) -> ShiftResult:
    """
    Move p onto plan.target and compare ‖p − p₁‖_C with 4‖p‖_C Δ_m/λ_m.

    λ_m is read from the reference sequence when given, else from the plan
    source.

    Raises:
        ShapeError: p's exponents differ from plan.source
    """
    if len(p) != len(plan.source) or not np.allclose(p.exponents, plan.source, rtol=_MATCH_RTOL, atol=0.0):
        raise ShapeError("polynomial exponents do not match the plan source",
                         context={'polynomial': p.exponents.tolist()[:8], 'plan': list(plan.source)[:8]})

    p1 = p.with_exponents(plan.target)
    norm, _ = sup_norm(p, refine=refine)
    m = plan.m
    if m is None:
        return ShiftResult(p1, 0.0, 0.0, norm, None, 0.0, None, True, True)

    lambda_m = float(reference.exponents[m - 1]) if reference is not None else float(plan.source[m - 1])
    bound = 4.0 * norm * plan.delta_m / lambda_m
    actual, _ = sup_norm(lambda t: np.asarray(p(t)) - np.asarray(p1(t)), refine=refine)
    admissible = is_admissible(p, norm)
    bound_ok = actual <= bound * (1.0 + 1e-12) + 1e-15

    if not bound_ok:
        message = f"shift bound violated: actual {actual:.6e} > bound {bound:.6e} (m={m})"
        if admissible:
            logger.error(message)
        else:
            logger.warning(message + " [observe mode]")
    return ShiftResult(p1, bound, actual, norm, m, plan.delta_m, lambda_m, admissible, bound_ok)


@dataclass(frozen=True)
class ChainResult:
    """Composite shift with per-step records and the hypothesis cap."""

    final: MuntzPolynomial
    cumulative_bound: float
    cumulative_actual: float
    steps: Tuple[ShiftResult, ...]
    delta: float
    reciprocal_sum: float
    delta_cap: float
    hypothesis_ok: bool
    single_jump_bound: Optional[float]

    @property
    def additive_ok(self) -> bool:
        """‖p − S p‖ within the sum of the per-step bounds."""
        return self.cumulative_actual <= self.cumulative_bound * (1.0 + 1e-12) + 1e-15

    def to_dict(self) -> Dict[str, Any]:
        return {
            "final": self.final.to_dict(),
            "cumulative_bound": self.cumulative_bound,
            "cumulative_actual": self.cumulative_actual,
            "steps": [step.to_dict() for step in self.steps],
            "delta": self.delta,
            "reciprocal_sum": self.reciprocal_sum,
            "delta_cap": self.delta_cap,
            "hypothesis_ok": self.hypothesis_ok,
            "single_jump_bound": self.single_jump_bound,
            "additive_ok": self.additive_ok,
        }


def compose_shift_chain(p: MuntzPolynomial, plans: Sequence[ExponentShiftPlan],
                        reference: Optional[ExponentSequence] = None, delta: Optional[float] = None,
                        refine: float = 1e-9) -> ChainResult:
    """
    Apply plans in order; the cumulative bound is the sum of step bounds.

    Also reports δ·Σ1/λ and whether δ < 1/(8 Σ1/λ), with δ the largest total
    shift unless given, and Σ over the reference (or first source) exponents.

    Raises:
        DegenerateInputError: empty chain
        ShapeError: a plan's source differs from the previous target
    """
    if not plans:
        raise DegenerateInputError("shift chain is empty")
    for i, (prev, nxt) in enumerate(zip(plans, plans[1:]), start=1):
        if not np.allclose(prev.target, nxt.source, rtol=_MATCH_RTOL, atol=0.0):
            raise ShapeError(f"plan {i} target does not match plan {i + 1} source")

    current = p
    steps: List[ShiftResult] = []
    for plan in plans:
        step = exponent_shift_operator(current, plan, reference, refine)
        steps.append(step)
        current = step.p1

    cumulative_bound = math.fsum(step.bound for step in steps)
    cumulative_actual, _ = sup_norm(lambda t: np.asarray(p(t)) - np.asarray(current(t)), refine=refine)

    base = reference.exponents if reference is not None else plans[0].source
    reciprocal_sum = math.fsum(1.0 / lam for lam in base)
    total_shift = float(np.max(np.subtract(plans[-1].target, plans[0].source)))
    delta = total_shift if delta is None else float(delta)
    delta_cap = delta * reciprocal_sum
    hypothesis_ok = delta < 1.0 / (8.0 * reciprocal_sum)

    try:
        jump = exponent_shift_operator(p, ExponentShiftPlan(plans[0].source, plans[-1].target), reference, refine)
        single_jump_bound: Optional[float] = jump.bound
    except DomainError:
        # the combined shifts need not be nonincreasing
        single_jump_bound = None

    logger.debug(f"shift chain of {len(plans)} steps: bound={cumulative_bound:.3e} actual={cumulative_actual:.3e}")
    return ChainResult(current, cumulative_bound, cumulative_actual, tuple(steps), delta, reciprocal_sum,
                       delta_cap, hypothesis_ok, single_jump_bound)
