"""
Derivative diagnostics for Müntz polynomials: the weak-L₁ quasi-norm of p′
on (0, 1) and the Cauchy-type estimate |p′(x)| <= G / (2π(1 − x)) on
(3/4, 1), where G is the maximum of |p| over the disc |u − 1/2| <= 1/2.

The pointwise estimate is reported, never raised: for finite polynomials it
can fail on part of (3/4, 1).
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..core.muntz import MuntzPolynomial
from ..utils.error_handler import DegenerateInputError
from ..utils.logger import get_logger
from .weak import SCAN_POINTS, weak_norm

logger = get_logger(__name__)

DISC_POINTS = 4096
POINTWISE_POINTS = 1024
_INTEGER_ATOL = 1e-12


def _disc_values(p: MuntzPolynomial, theta: np.ndarray, powers: np.ndarray) -> np.ndarray:
    u = 0.5 + 0.5 * np.exp(1j * np.asarray(theta, dtype=float))
    return np.abs(np.power.outer(u, powers) @ p.coefficients)


def disc_maximum(p: MuntzPolynomial, disc_points: int = DISC_POINTS, refine: float = 1e-10) -> Tuple[float, float]:
    """
    max |p(u)| over |u − 1/2| <= 1/2 for integer exponents, taken on the
    boundary circle; returns (G, θ) with u = 1/2 + e^{iθ}/2.
    """
    powers = np.rint(p.exponents).astype(int)
    theta = 2.0 * np.pi * np.arange(disc_points) / disc_points
    values = _disc_values(p, theta, powers)
    i = int(np.argmax(values))
    G, best = float(values[i]), float(theta[i])
    step = 2.0 * np.pi / disc_points
    res = minimize_scalar(lambda s: -float(_disc_values(p, np.array([s]), powers)[0]),
                          bounds=(best - step, best + step), method="bounded", options={'xatol': refine})
    if -res.fun > G:
        G, best = float(-res.fun), float(res.x) % (2.0 * np.pi)
    return G, best


@dataclass(frozen=True)
class DerivativeReport:
    weak_norm_value: float
    weak_norm_stable: bool
    cauchy_G: Optional[float]
    disc_checked: bool
    pointwise_bound_ok: Optional[bool]
    worst_x: Optional[float]
    worst_ratio: Optional[float]
    notes: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weak_norm_value": self.weak_norm_value,
            "weak_norm_stable": self.weak_norm_stable,
            "cauchy_G": self.cauchy_G,
            "disc_checked": self.disc_checked,
            "pointwise_bound_ok": self.pointwise_bound_ok,
            "worst_x": self.worst_x,
            "worst_ratio": self.worst_ratio,
            "notes": list(self.notes),
        }


def derivative_weak_l1_check(p: MuntzPolynomial, scan_points: int = SCAN_POINTS,
                             disc_points: int = DISC_POINTS,
                             pointwise_points: int = POINTWISE_POINTS) -> DerivativeReport:
    """
    Weak-L₁ norm of p′ on (0, 1) plus, for integer exponents, the disc
    maximum G and the pointwise check on (3/4, 1).

    worst_ratio is the largest |p′(x)| · 2π(1 − x) / G seen on the grid;
    the check passes when it is at most 1.

    Raises:
        DegenerateInputError: p is constant (zero)
    """
    if len(p) == 0 or p.is_zero:
        raise DegenerateInputError("derivative check needs a nonconstant polynomial")

    weak = weak_norm(p.derivative_values, 1.0, 0.0, 1.0, scan_points=scan_points)
    notes: List[str] = []

    exponents = p.exponents
    if not np.allclose(exponents, np.rint(exponents), rtol=0.0, atol=_INTEGER_ATOL):
        notes.append("non-integer exponents: disc check skipped")
        logger.info("derivative check: disc bound skipped for non-integer exponents")
        return DerivativeReport(weak.value, weak.stable, None, False, None, None, None, tuple(notes))

    G, _ = disc_maximum(p, disc_points)
    x = 0.75 + 0.25 * (np.arange(pointwise_points) + 0.5) / pointwise_points
    ratio = np.abs(np.asarray(p.derivative_values(x))) * 2.0 * np.pi * (1.0 - x) / G
    i = int(np.argmax(ratio))
    ok = bool(ratio[i] <= 1.0)
    if not ok:
        notes.append(f"|p'(x)| exceeds G/(2π(1−x)) at x={x[i]:.4f}")
        logger.warning(f"Cauchy estimate fails at x={x[i]:.4f}: ratio {ratio[i]:.3f}")
    return DerivativeReport(weak.value, weak.stable, G, True, ok, float(x[i]), float(ratio[i]), tuple(notes))
