"""
Exponent sequences Λ and the gap / Müntz-sum conditions.

Sequences are finite truncations, optionally tagged with the generator rule
they came from. Rules let the library speak about the infinite sequence:
the gap verdict and the tail of Σ 1/λ are read off the rule, not only the
truncation.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..utils.error_handler import DegenerateInputError, DomainError
from ..utils.logger import get_logger

logger = get_logger(__name__)

RULES = ("power", "geometric", "explicit")

# exponents closer than this (relative) are merged when forming unions
_MERGE_RTOL = 1e-12


def _rule_values(rule: str, params: Mapping[str, Any], N: int) -> np.ndarray:
    scale = float(params.get("scale", 1.0))
    shift = float(params.get("shift", 0.0))
    n = np.arange(1, N + 1, dtype=float)
    if rule == "power":
        return scale * n ** float(params["p"]) + shift
    if rule == "geometric":
        return scale * float(params["base"]) ** n + shift
    raise DomainError(f"unknown exponent rule '{rule}'", context={'rule': rule})


def _merge_sorted(values: Iterable[float]) -> Tuple[float, ...]:
    ordered = sorted(float(v) for v in values)
    merged = []
    for v in ordered:
        if merged and abs(v - merged[-1]) <= _MERGE_RTOL * max(1.0, abs(v)):
            continue
        merged.append(v)
    return tuple(merged)


@dataclass(frozen=True)
class ExponentSequence:
    """
    Strictly increasing positive exponents λ₁ < λ₂ < … (a truncation of Λ).

    Attributes:
        exponents: the truncation, always explicit
        rule: "power" (λₙ = scale·nᵖ + shift), "geometric"
            (λₙ = scale·baseⁿ + shift) or "explicit"
        params: rule parameters; may carry "extra" exponents merged in
        N: number of rule terms in the truncation (len(exponents) for explicit)
    """

    exponents: Tuple[float, ...]
    rule: str = "explicit"
    params: Mapping[str, Any] = field(default_factory=dict)
    N: int = 0

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.exponents)
        object.__setattr__(self, "exponents", values)
        object.__setattr__(self, "params", dict(self.params))
        if self.rule not in RULES:
            raise DomainError(f"unknown exponent rule '{self.rule}'", context={'rule': self.rule})
        if not values:
            raise DegenerateInputError("exponent sequence is empty")
        if not all(math.isfinite(v) and v > 0 for v in values):
            raise DomainError("exponents must be finite and positive", context={'exponents': values[:8]})
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError("exponents must be strictly increasing")
        if self.N <= 0:
            object.__setattr__(self, "N", len(values))

    @classmethod
    def power(cls, p: float, N: int, scale: float = 1.0, shift: float = 0.0) -> "ExponentSequence":
        """λₙ = scale·nᵖ + shift for n = 1..N."""
        params = {"p": float(p), "scale": float(scale), "shift": float(shift)}
        return cls(tuple(_rule_values("power", params, N)), "power", params, N)

    @classmethod
    def geometric(cls, base: float, N: int, scale: float = 1.0, shift: float = 0.0) -> "ExponentSequence":
        """λₙ = scale·baseⁿ + shift for n = 1..N."""
        params = {"base": float(base), "scale": float(scale), "shift": float(shift)}
        return cls(tuple(_rule_values("geometric", params, N)), "geometric", params, N)

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "ExponentSequence":
        """A finite, complete exponent set."""
        return cls(tuple(float(v) for v in values), "explicit", {}, len(values))

    @classmethod
    def from_rule(cls, rule: str, params: Mapping[str, Any], N: Optional[int] = None) -> "ExponentSequence":
        """Build from a rule name and its parameters (JSON shape)."""
        if rule == "explicit":
            values = params.get("values")
            if values is None:
                raise DomainError("explicit rule needs 'values'")
            return cls.explicit(values)
        if N is None or N < 1:
            raise DegenerateInputError(f"rule '{rule}' needs a truncation length N >= 1")
        base_params = {k: v for k, v in params.items() if k != "extra"}
        values = list(_rule_values(rule, base_params, N))
        extra = tuple(float(v) for v in params.get("extra", ()))
        if extra:
            base_params["extra"] = list(extra)
        return cls(_merge_sorted(values + list(extra)), rule, base_params, N)

    def __len__(self) -> int:
        return len(self.exponents)

    @cached_property
    def alpha0(self) -> float:
        """Smallest consecutive gap of the truncation (inf for a single exponent)."""
        if len(self.exponents) < 2:
            return math.inf
        return float(np.min(np.diff(np.asarray(self.exponents))))

    @cached_property
    def alpha1(self) -> float:
        """Σ 1/λ over the truncation, compensated summation."""
        return math.fsum(1.0 / v for v in self.exponents)

    @cached_property
    def tail_bound(self) -> float:
        """Upper bound on Σ 1/λ beyond the truncation; inf when divergent."""
        return _tail_bound(self)

    @property
    def gap_rule_holds(self) -> bool:
        """Gap verdict for the full sequence the rule generates."""
        return _gap_rule_holds(self)

    @property
    def muntz_condition_holds(self) -> bool:
        return math.isfinite(self.tail_bound)

    def to_dict(self) -> Dict[str, Any]:
        """JSON shape; the explicit list is always emitted."""
        return {
            "rule": self.rule,
            "params": dict(self.params),
            "N": self.N,
            "exponents": list(self.exponents),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExponentSequence":
        rule = data.get("rule", "explicit")
        params = dict(data.get("params", {}))
        if rule == "explicit":
            return cls.explicit(data.get("exponents") or params.get("values", ()))
        seq = cls.from_rule(rule, params, int(data["N"]))
        listed = data.get("exponents")
        if listed is not None and not np.allclose(listed, seq.exponents, rtol=1e-12, atol=0.0):
            raise DomainError("listed exponents disagree with the generator rule",
                              context={'rule': rule, 'N': data["N"]})
        return seq


def _tail_bound(seq: ExponentSequence) -> float:
    if seq.rule == "explicit":
        return 0.0
    scale = float(seq.params.get("scale", 1.0))
    N = seq.N
    if seq.rule == "power":
        p = float(seq.params["p"])
        if p <= 1.0:
            return math.inf
        # Σ_{n>N} n^{-p} ≤ ∫_N^∞ x^{-p} dx; a nonnegative shift only shrinks terms
        return N ** (1.0 - p) / (p - 1.0) / scale
    base = float(seq.params["base"])
    if base <= 1.0:
        return math.inf
    return base ** (-N) / (base - 1.0) / scale


def _gap_rule_holds(seq: ExponentSequence) -> bool:
    truncated = len(seq) < 2 or seq.alpha0 > 0
    if seq.rule == "explicit":
        return truncated
    if seq.rule == "power":
        # gaps of n^p are nondecreasing for p >= 1 and tend to 0 for p < 1
        return truncated and float(seq.params["p"]) >= 1.0
    return truncated and float(seq.params["base"]) > 1.0


def check_gap_condition(seq: ExponentSequence) -> Tuple[bool, float]:
    """
    Gap condition inf (λ_{k+1} − λ_k) > 0.

    Returns:
        (holds, alpha0) where alpha0 is the smallest gap of the truncation and
        holds reflects the generator rule when one is attached
    """
    if len(seq) < 2:
        raise DegenerateInputError("gap condition needs at least 2 exponents",
                                   context={'length': len(seq)})
    return seq.gap_rule_holds, seq.alpha0


def muntz_sum(seq: ExponentSequence) -> Tuple[float, float]:
    """
    Müntz sum Σ 1/λ over the truncation and a rigorous tail bound.

    Returns:
        (alpha1, tail); tail is math.inf when the rule diverges
    """
    return seq.alpha1, seq.tail_bound


def condition_verdict(seq: ExponentSequence) -> str:
    gap = seq.gap_rule_holds
    muntz = seq.muntz_condition_holds
    if gap and muntz:
        return "both-conditions-hold"
    if muntz:
        return "gap-fails"
    if gap:
        return "muntz-fails"
    return "both-fail"


def transform_exponents(seq: ExponentSequence, alpha: float, beta: float = 0.0,
                        extra: Iterable[float] = ()) -> ExponentSequence:
    """
    Sorted union of {αλ + β} and an extra finite set; duplicates merged.

    Rule-based sequences keep their rule with scale and shift updated, so the
    tail bound (and the Müntz verdict) carry over.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}", context={'alpha': alpha})
    if beta < 0:
        raise DomainError(f"beta must be nonnegative, got {beta}", context={'beta': beta})
    extra_values = [float(v) for v in extra]
    if any(not v > 0 for v in extra_values):
        raise DomainError("extra exponents must be positive")

    if seq.rule == "explicit":
        values = [alpha * v + beta for v in seq.exponents] + extra_values
        return ExponentSequence.explicit(_merge_sorted(values))

    params = dict(seq.params)
    params["scale"] = alpha * float(params.get("scale", 1.0))
    params["shift"] = alpha * float(params.get("shift", 0.0)) + beta
    old_extra = [alpha * float(v) + beta for v in params.pop("extra", ())]
    params["extra"] = old_extra + extra_values
    transformed = ExponentSequence.from_rule(seq.rule, params, seq.N)
    logger.debug(f"transformed {seq.rule} sequence: alpha={alpha} beta={beta} extra={len(extra_values)}")
    return transformed
