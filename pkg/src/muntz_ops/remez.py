"""
Remez-type constant estimation: lower bounds for η in
‖h‖_{C[0,δ]} <= η ‖h‖_{C[δ,1]} over a Müntz space.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.exponents import ExponentSequence
from ..core.muntz import MuntzPolynomial
from ..core.norms import sup_norm
from ..utils.error_handler import DegenerateInputError, DomainError, PreconditionError
from ..utils.logger import ProgressLogger, get_logger

logger = get_logger(__name__)

DENOMINATOR_FLOOR = 1e-14


def remez_ratio(h: MuntzPolynomial, delta: float, refine: float = 1e-9) -> float:
    """
    ‖h‖_{C[0,δ]} / ‖h‖_{C[δ,1]}.

    Raises:
        DomainError: delta outside (0, 1)
        DegenerateInputError: the denominator is below 1e-14
    """
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    numerator, _ = sup_norm(h, refine=refine, a=0.0, b=delta)
    denominator, _ = sup_norm(h, refine=refine, a=delta, b=1.0)
    if denominator < DENOMINATOR_FLOOR:
        raise DegenerateInputError("Remez ratio denominator vanishes",
                                   context={'denominator': denominator, 'delta': delta})
    return numerator / denominator


@dataclass(frozen=True)
class RemezEstimate:
    """Running-maximum lower bound for η with the maximizing sample."""

    eta_lower: float
    delta: float
    samples: int
    skipped: int
    running_max: Tuple[float, ...]
    best_index: int
    best: Optional[MuntzPolynomial]
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eta_lower": self.eta_lower,
            "delta": self.delta,
            "samples": self.samples,
            "skipped": self.skipped,
            "running_max": list(self.running_max),
            "best_index": self.best_index,
            "best": self.best.to_dict() if self.best is not None else None,
            "seed": self.seed,
        }


def remez_eta_estimate(seq: ExponentSequence, delta: float, samples: int, seed: int = 0x5EED,
                       terms: Optional[int] = None, refine: float = 1e-9,
                       max_workers: int = 4) -> RemezEstimate:
    """
    max over seeded random h of ‖h‖_{[0,δ]} / ‖h‖_{[δ,1]}.

    Sample i draws standard-normal coefficients on the first `terms`
    exponents from the i-th child of SeedSequence(seed), so a larger sample
    count extends, and never changes, the earlier samples. Degenerate
    samples are skipped and counted.

    Raises:
        DomainError: delta outside (0, 1) or samples < 1
        PreconditionError: the sequence fails the Müntz condition
    """
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    if not seq.muntz_condition_holds:
        raise PreconditionError("Remez estimate needs a sequence satisfying the Müntz condition",
                                context={'rule': seq.rule, 'tail': seq.tail_bound})

    exponents = np.asarray(seq.exponents[:terms or len(seq)])
    children = np.random.SeedSequence(seed).spawn(samples)
    progress = ProgressLogger(samples, "Remez sampling", logger)

    def draw(child: np.random.SeedSequence) -> Tuple[Optional[float], MuntzPolynomial]:
        coeffs = np.random.default_rng(child).standard_normal(exponents.size)
        h = MuntzPolynomial.from_coefficients(exponents, coeffs)
        try:
            return remez_ratio(h, delta, refine), h
        except DegenerateInputError:
            return None, h

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results: List[Tuple[Optional[float], MuntzPolynomial]] = []
        for result in pool.map(draw, children):
            results.append(result)
            progress.update()
    progress.complete()

    running: List[float] = []
    best_value, best_index, best = 0.0, -1, None
    skipped = 0
    for i, (value, h) in enumerate(results):
        if value is None:
            skipped += 1
        elif value > best_value:
            best_value, best_index, best = value, i, h
        running.append(best_value)

    if skipped:
        logger.info(f"Remez sampling skipped {skipped} degenerate samples")
    return RemezEstimate(best_value, delta, samples, skipped, tuple(running), best_index, best, seed)
