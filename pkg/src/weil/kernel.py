"""
The kernel 𝒟_{ψ,β}(x) = Σ_{k>=1} ψ(k) cos(2πkx + βπ/2).

Values are partial sums completed by a tail estimate. Away from x ≡ 0 the
tail Σ_{k>=M} ψ(k) z^k (z = e^{2πix}) is expanded by summation by parts,

    Σ_{k>=M} g(k) z^k = (−g(M) z^M + Σ_{k>=M+1} Δg(k) z^k) / (z − 1),
    Δg(k) = g(k−1) − g(k),

applied twice. For ψ with completely monotone differences the dropped part
is at most 2|Δ²ψ(M+2)| / |z − 1|³. At x ≡ 0 a summable power rule is
completed by ∫_{M−½}^∞ ψ, which is within ψ(M−½)/2 of Σ_{k>=M} ψ(k).
"""

import cmath
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..fourier.trig import FourierCoefficients, TrigPolynomial, convolve_periodic
from ..utils.logger import get_logger
from .psi import PsiWeight

logger = get_logger(__name__)

_CHUNK = 1 << 20


def _unit(x: float, k: int) -> complex:
    """e^{2πikx} with the phase reduced mod 1 first."""
    return cmath.exp(2j * math.pi * ((k * x) % 1.0))


@dataclass(frozen=True)
class KernelValue:
    """A kernel value with its tail estimate and certificate."""

    value: float
    partial: float
    tail_estimate: float
    tail_bound: float
    terms: int
    certified: bool
    diverging: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "partial": self.partial,
            "tail_estimate": self.tail_estimate,
            "tail_bound": self.tail_bound,
            "terms": self.terms,
            "certified": self.certified,
            "diverging": self.diverging,
        }


def _power_sum(psi: PsiWeight, x: float, start: int, stop: int) -> complex:
    """Σ_{k=start}^{stop−1} ψ(k) e^{2πikx}, in chunks."""
    total = 0j
    for lo in range(start, stop, _CHUNK):
        k = np.arange(lo, min(stop, lo + _CHUNK), dtype=float)
        phase = 2.0 * np.pi * np.mod(k * x, 1.0)
        total += complex(np.sum(np.asarray(psi(k)) * np.exp(1j * phase)))
    return total


def abel_tail(psi: PsiWeight, x: float, M: int) -> Tuple[complex, float]:
    """
    Second-order summation-by-parts estimate of Σ_{k>=M} ψ(k) e^{2πikx}.

    Returns:
        (estimate, bound on the dropped remainder)
    """
    g = lambda k: float(psi(k))  # noqa: E731
    d1 = g(M) - g(M + 1)
    d2_next = g(M) - 2.0 * g(M + 1) + g(M + 2)
    w = _unit(x, 1) - 1.0
    estimate = (-g(M) * _unit(x, M) + (-d1 * _unit(x, M + 1)) / w) / w
    bound = 2.0 * abs(d2_next) / abs(w) ** 3
    return estimate, bound


def dpsi_kernel(psi: PsiWeight, x: float, tol: float = 1e-8, K_prime: Optional[int] = None,
                max_terms: int = 10 ** 7, phase_sign: int = 1) -> KernelValue:
    """
    𝒟_{ψ,β}(x) to within tol where the tail bound certifies it.

    The number of summed terms starts at max(K, 64) and doubles until the
    tail bound drops below tol or max_terms is reached; an uncertified
    estimate is returned with certified=False. At x ≡ 0 a non-summable ψ
    returns a diverging marker (infinite value, diverging=True).
    """
    phi = phase_sign * psi.phase
    rotation = complex(math.cos(phi), math.sin(phi))
    xr = float(x) % 1.0

    if psi.rule == "table":
        n = len(psi.values)
        partial = (rotation * _power_sum(psi, xr, 1, n + 1)).real
        exact = psi.tail == "zero"
        return KernelValue(partial, partial, 0.0, 0.0 if exact else math.inf, n, exact)

    M = max(int(K_prime or psi.K), 64)

    if xr == 0.0:
        if abs(math.cos(phi)) < 1e-15:
            return KernelValue(0.0, 0.0, 0.0, 0.0, 0, True)
        if not psi.summable:
            logger.warning(f"kernel diverges at x=0 for non-summable psi ({psi.rule})")
            return KernelValue(math.copysign(math.inf, math.cos(phi)), math.nan, math.inf, math.inf,
                               0, False, diverging=True)

    partial_sum = _power_sum(psi, xr, 1, M)
    while True:
        if xr == 0.0:
            tail = complex(psi.sum_tail(M - 0.5))
            bound = float(psi(M - 0.5)) / 2.0
        else:
            tail, bound = abel_tail(psi, xr, M)
        if bound <= tol or 2 * M > max_terms:
            break
        partial_sum += _power_sum(psi, xr, M, 2 * M)
        M *= 2

    certified = bound <= tol
    if not certified:
        logger.warning(f"kernel tail at x={xr:g} not certified: bound {bound:.2e} > tol {tol:.2e} "
                       f"after {M - 1} terms")
    partial = (rotation * partial_sum).real
    tail_value = (rotation * tail).real
    return KernelValue(partial + tail_value, partial, tail_value, bound, M - 1, certified)


def psi_kernel_polynomial(psi: PsiWeight, K: int, phase_sign: int = 1) -> TrigPolynomial:
    """Degree-K truncation Σ_{k<=K} ψ(k) cos(2πkx ± βπ/2)."""
    phi = phase_sign * psi.phase
    k = np.arange(1, K + 1)
    values = np.asarray(psi(k), dtype=float)
    return TrigPolynomial(0.0, tuple(zip((values * math.cos(phi)).tolist(),
                                         (-values * math.sin(phi)).tolist())))


def convolution_representation(d: Union[FourierCoefficients, TrigPolynomial], psi: PsiWeight, a0: float,
                               x: Any, tol: float = 1e-10) -> Any:
    """
    a0/2 + 2∫₀¹ d(x − t) 𝒟(t) dt by quadrature.

    𝒟 is the kernel with phase −βπ/2 truncated at the degree of d, which
    is exact for trigonometric d.
    """
    poly = d.to_trig() if isinstance(d, FourierCoefficients) else d
    kern = psi_kernel_polynomial(psi, max(poly.degree, 1), phase_sign=-1)
    return 0.5 * a0 + convolve_periodic(poly, kern, x, tol)
