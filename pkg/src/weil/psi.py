"""
Multiplier sequences ψ(k) with a phase β, and the class-F₁ checks.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from ..utils.error_handler import DegenerateInputError, DomainError
from ..utils.logger import get_logger

logger = get_logger(__name__)

PSI_RULES = ("power", "log", "table")
TABLE_TAILS = ("zero", "none")

# relative slack for Δ₂ψ(k) >= 0 on exactly linear stretches
_CONVEXITY_RTOL = 1e-12


@dataclass(frozen=True)
class PsiWeight:
    """
    ψ(k) for k >= 1, a phase β and a truncation K.

    Rules:
        power: ψ(k) = scale · k^(−r)
        log:   ψ(k) = 1 / ln(k + 1)
        table: ψ(k) = values[k−1]; beyond the table ψ is 0 (tail "zero")
               or unknown (tail "none", evaluates to NaN)
    """

    rule: str
    beta: float = 0.0
    K: int = 0
    r: float = 0.0
    scale: float = 1.0
    values: Tuple[float, ...] = ()
    tail: str = "none"

    def __post_init__(self) -> None:
        if self.rule not in PSI_RULES:
            raise DomainError(f"unknown psi rule '{self.rule}'", context={'known': PSI_RULES})
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.rule == "table":
            if not self.values:
                raise DegenerateInputError("psi table is empty")
            if self.tail not in TABLE_TAILS:
                raise DomainError(f"unknown table tail '{self.tail}'", context={'known': TABLE_TAILS})
            if self.K <= 0:
                object.__setattr__(self, "K", len(self.values))
        elif self.K <= 0:
            object.__setattr__(self, "K", 1024)
        if self.rule == "power" and not self.scale > 0:
            raise DomainError(f"power rule needs a positive scale, got {self.scale}")

    @classmethod
    def power(cls, r: float, beta: float = 0.0, K: int = 1024, scale: float = 1.0) -> "PsiWeight":
        return cls("power", beta, K, r=float(r), scale=float(scale))

    @classmethod
    def log(cls, beta: float = 0.0, K: int = 1024) -> "PsiWeight":
        return cls("log", beta, K)

    @classmethod
    def table(cls, values: Tuple[float, ...], beta: float = 0.0, tail: str = "none") -> "PsiWeight":
        return cls("table", beta, len(values), values=tuple(values), tail=tail)

    @property
    def phase(self) -> float:
        """βπ/2."""
        return self.beta * math.pi / 2.0

    def __call__(self, k: Any) -> Any:
        k_arr = np.asarray(k, dtype=float)
        if self.rule == "power":
            out = self.scale * k_arr ** (-self.r)
        elif self.rule == "log":
            out = 1.0 / np.log(k_arr + 1.0)
        else:
            table = np.asarray(self.values)
            idx = k_arr.astype(int) - 1
            inside = (idx >= 0) & (idx < table.size)
            beyond = 0.0 if self.tail == "zero" else np.nan
            out = np.where(inside, table[np.clip(idx, 0, table.size - 1)], beyond)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def summable(self) -> bool:
        """Σ ψ(k) < ∞ (absolute convergence of the kernel at every x)."""
        if self.rule == "power":
            return self.r > 1.0
        if self.rule == "table":
            return self.tail == "zero"
        return False

    def sum_tail(self, M: float) -> Optional[float]:
        """∫_M^∞ ψ for summable power rules; None otherwise."""
        if self.rule == "power" and self.r > 1.0:
            return self.scale * M ** (1.0 - self.r) / (self.r - 1.0)
        return None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"rule": self.rule, "beta": self.beta, "K": self.K}
        if self.rule == "power":
            data.update({"r": self.r, "scale": self.scale})
        elif self.rule == "table":
            data.update({"values": list(self.values), "tail": self.tail})
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PsiWeight":
        rule = data.get("rule", "power")
        beta = float(data.get("beta", 0.0))
        if rule == "power":
            return cls.power(float(data["r"]), beta, int(data.get("K", 1024)), float(data.get("scale", 1.0)))
        if rule == "log":
            return cls.log(beta, int(data.get("K", 1024)))
        if rule == "table":
            return cls.table(tuple(data["values"]), beta, data.get("tail", "none"))
        raise DomainError(f"unknown psi rule '{rule}'")


def ratio(psi2: PsiWeight, psi1: PsiWeight) -> PsiWeight:
    """
    The weight ψ₂/ψ₁ with phase β₂ − β₁.

    Two power rules stay a power rule; anything else becomes a table over
    1..min(K₁, K₂).
    """
    beta = psi2.beta - psi1.beta
    if psi2.rule == "power" and psi1.rule == "power":
        return PsiWeight.power(psi2.r - psi1.r, beta, min(psi1.K, psi2.K), psi2.scale / psi1.scale)
    K = min(psi1.K, psi2.K)
    k = np.arange(1, K + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.asarray(psi2(k)) / np.asarray(psi1(k))
    return PsiWeight.table(tuple(values.tolist()), beta, tail="none")


@dataclass(frozen=True)
class PsiClassReport:
    """Outcome of the F₁ membership checks on a truncation plus rule-based tail."""

    in_F1: bool
    positive_ok: bool
    decay_ok: bool
    convexity_ok: bool
    sum_ok: bool
    series_partial: float
    series_tail: Optional[float]
    tail_method: str
    verdict: str
    reason: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "in_F1": self.in_F1,
            "positive_ok": self.positive_ok,
            "decay_ok": self.decay_ok,
            "convexity_ok": self.convexity_ok,
            "sum_ok": self.sum_ok,
            "series_partial": self.series_partial,
            "series_tail": self.series_tail,
            "tail_method": self.tail_method,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def _series_tail(psi: PsiWeight) -> Tuple[Optional[float], str]:
    """Bound on Σ_{k>K} ψ(k)/k and the method that produced it."""
    K = psi.K
    if psi.rule == "power":
        if psi.r <= 0:
            return math.inf, "integral-divergent"
        # Σ_{k>K} k^(−r−1) ≤ ∫_K^∞ x^(−r−1) dx
        return psi.scale * K ** (-psi.r) / psi.r, "integral"
    if psi.rule == "log":
        # ∫ dx / (x ln x) = ln ln x → ∞
        return math.inf, "integral-test-divergent"
    if psi.tail == "zero":
        return 0.0, "finite-support"
    return None, "undecidable-tail"


def validate_psi_class(psi: PsiWeight) -> PsiClassReport:
    """
    Check ψ ∈ F₁: positive, tending to 0, convex, Σ ψ(k)/k < ∞.

    Convexity Δ₂ψ(k) = ψ(k−1) − 2ψ(k) + ψ(k+1) >= 0 is checked for
    2 <= k <= K−1; the series is summed over 1..K and completed with a
    rule-based tail bound.

    Raises:
        DegenerateInputError: K < 3
    """
    if psi.K < 3:
        raise DegenerateInputError("class check needs K >= 3", context={'K': psi.K})
    k = np.arange(1, psi.K + 1)
    vals = np.asarray(psi(k), dtype=float)

    positive_ok = bool(np.all(vals > 0))
    second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    convexity_ok = bool(np.all(second >= -_CONVEXITY_RTOL * np.abs(vals[:-2])))
    partial = math.fsum((vals / k).tolist())
    tail, method = _series_tail(psi)

    if psi.rule == "power":
        decay_ok = psi.r > 0
    elif psi.rule == "log":
        decay_ok = True
    else:
        decay_ok = psi.tail == "zero"

    reason = ""
    if tail is None:
        sum_ok = False
        in_F1 = False
        verdict = "undecidable-tail"
        reason = "explicit table without a tail rule"
    else:
        sum_ok = math.isfinite(tail)
        in_F1 = positive_ok and decay_ok and convexity_ok and sum_ok
        if psi.rule == "table" and psi.tail == "zero":
            # the zero tail is not a positive sequence
            in_F1 = False
            reason = "finite support: psi vanishes beyond the table"
        verdict = "in-F1" if in_F1 else "not-in-F1"
        if not in_F1 and not reason:
            failed = [name for name, ok in (("positivity", positive_ok), ("decay", decay_ok),
                                            ("convexity", convexity_ok), ("series", sum_ok)) if not ok]
            reason = "failed: " + ", ".join(failed)

    report = PsiClassReport(in_F1, positive_ok, decay_ok, convexity_ok, sum_ok, partial, tail,
                            method, verdict, reason)
    logger.debug(f"psi class check ({psi.rule}): {verdict} {reason}".rstrip())
    return report
