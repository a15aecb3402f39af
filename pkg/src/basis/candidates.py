"""
Trigonometric candidates U_m(f, ·, Q) for periodized Müntz functions.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exponents import ExponentSequence
from ..fourier.summation import SummationMatrix, summation_apply
from ..fourier.trig import TrigPolynomial, fourier_coefficients
from ..muntz_ops.periodize import periodize
from ..utils.error_handler import DomainError
from ..utils.logger import get_logger
from .difference import difference_system

logger = get_logger(__name__)


@dataclass(frozen=True)
class CandidateSet:
    """Retained candidates with the (function index, degree) pair each came from."""

    candidates: Tuple[TrigPolynomial, ...]
    sources: Tuple[Tuple[int, int], ...]
    dropped: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.candidates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "candidates": [c.to_dict() for c in self.candidates],
            "sources": [list(s) for s in self.sources],
            "dropped": [list(s) for s in self.dropped],
        }


def _independent(basis: List[np.ndarray], v: np.ndarray, rank_tol: float) -> bool:
    if not basis:
        return True
    width = max(v.size, max(b.size for b in basis))
    M = np.column_stack([np.pad(b, (0, width - b.size)) for b in basis])
    w = np.pad(v, (0, width - v.size))
    coef, *_ = np.linalg.lstsq(M, w, rcond=None)
    return float(np.max(np.abs(w - M @ coef))) > rank_tol * float(np.max(np.abs(w)))


def build_candidates(fs: Sequence[Callable[[np.ndarray], np.ndarray]], Q: SummationMatrix,
                     degrees: Sequence[int], K: Optional[int] = None, tol: float = 1e-10,
                     rank_tol: float = 1e-10, coefficient_factor: int = 4) -> CandidateSet:
    """
    s_l = U_m(f, ·, Q) over (f, m) pairs taken function by function, degrees
    in the given order.

    Zero candidates and candidates in the span of the earlier ones (relative
    residual <= rank_tol) are dropped in order.
    """
    if not degrees or min(degrees) < 0:
        raise DomainError("degrees must be a non-empty list of integers >= 0",
                          context={'degrees': list(degrees)})
    K = K or max(1, coefficient_factor * max(degrees))

    kept: List[TrigPolynomial] = []
    vectors: List[np.ndarray] = []
    sources: List[Tuple[int, int]] = []
    dropped: List[Tuple[int, int]] = []
    for i, f in enumerate(fs):
        coeffs = fourier_coefficients(f, K, tol)
        for m in degrees:
            s = summation_apply(coeffs, Q, int(m))
            v = s.coefficient_vector()
            if not np.any(np.abs(v) > 0.0):
                logger.info(f"dropping zero candidate (f{i}, m={m})")
                dropped.append((i, int(m)))
                continue
            if not _independent(vectors, v, rank_tol):
                logger.debug(f"dropping dependent candidate (f{i}, m={m})")
                dropped.append((i, int(m)))
                continue
            kept.append(s)
            vectors.append(v)
            sources.append((i, int(m)))

    logger.info(f"built {len(kept)} candidates from {len(fs) * len(degrees)} pairs")
    return CandidateSet(tuple(kept), tuple(sources), tuple(dropped))


def candidates_from_sequence(seq: ExponentSequence, N: int, Q: SummationMatrix, degrees: Sequence[int],
                             tol: float = 1e-10, rank_tol: float = 1e-10,
                             coefficient_factor: int = 4) -> CandidateSet:
    """Candidates from the periodized difference system u₁..u_N of seq."""
    fs = [periodize(u) for u in difference_system(seq, N)]
    return build_candidates(fs, Q, degrees, tol=tol, rank_tol=rank_tol, coefficient_factor=coefficient_factor)
