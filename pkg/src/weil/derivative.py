"""
Weil (ψ,β)-derivative as a Fourier multiplier, its inverse, the C^ψ_β norm
and the two-stage composition check.
"""

import math
from typing import Tuple

import numpy as np

from ..core.norms import sup_norm
from ..fourier.trig import FourierCoefficients
from ..utils.error_handler import DivisionError, PreconditionError, TruncationError
from ..utils.logger import get_logger
from .psi import PsiWeight, ratio

logger = get_logger(__name__)

# a constant term below this (relative to the coefficients) counts as zero
_CONSTANT_RTOL = 1e-12


def _multiplier(psi: PsiWeight, c: FourierCoefficients) -> Tuple[np.ndarray, np.ndarray]:
    """ψ(k) for k = 1..K and the mask of active harmonics."""
    k = np.arange(1, c.K + 1)
    active = (c.a != 0.0) | (c.b != 0.0)
    values = np.asarray(psi(k), dtype=float)
    for idx in np.nonzero(active)[0]:
        if np.isnan(values[idx]):
            raise TruncationError(f"psi({idx + 1}) is unknown beyond the table",
                                  context={'k': int(idx + 1), 'table_length': psi.K})
        if values[idx] == 0.0:
            raise DivisionError(int(idx + 1))
    return values, active


def weil_derivative(c: FourierCoefficients, psi: PsiWeight) -> FourierCoefficients:
    """
    f^ψ_β: harmonic k divided by ψ(k) and rotated by βπ/2.

        a_k' = (a_k cos φ + b_k sin φ) / ψ(k)
        b_k' = (−a_k sin φ + b_k cos φ) / ψ(k),   φ = βπ/2

    The constant term is annihilated.

    Raises:
        DivisionError: ψ(k) = 0 at an active harmonic k
    """
    values, active = _multiplier(psi, c)
    cos_phi, sin_phi = math.cos(psi.phase), math.sin(psi.phase)
    safe = np.where(active, values, 1.0)
    a_new = np.where(active, (c.a * cos_phi + c.b * sin_phi) / safe, 0.0)
    b_new = np.where(active, (-c.a * sin_phi + c.b * cos_phi) / safe, 0.0)
    return FourierCoefficients(0.0, tuple(zip(a_new.tolist(), b_new.tolist())), c.provenance, c.tol)


def weil_reconstruct(d: FourierCoefficients, psi: PsiWeight, a0: float) -> FourierCoefficients:
    """
    Inverse of weil_derivative: multiply by ψ(k), rotate by −βπ/2, restore a0.

    Raises:
        PreconditionError: d carries a nonzero constant term
    """
    scale = max(1.0, float(np.max(np.abs(np.concatenate([d.a, d.b])))))
    if abs(d.a0) > _CONSTANT_RTOL * scale:
        raise PreconditionError("derivative coefficients must have zero constant term",
                                context={'a0': d.a0})
    values, active = _multiplier(psi, d)
    cos_phi, sin_phi = math.cos(psi.phase), math.sin(psi.phase)
    a_new = np.where(active, values * (d.a * cos_phi - d.b * sin_phi), 0.0)
    b_new = np.where(active, values * (d.a * sin_phi + d.b * cos_phi), 0.0)
    return FourierCoefficients(float(a0), tuple(zip(a_new.tolist(), b_new.tolist())), d.provenance, d.tol)


def weil_nagy_norm(c: FourierCoefficients, psi: PsiWeight, tol: float = 1e-9) -> float:
    """‖f‖_{C^ψ_β} = ‖f^ψ_β‖_C on [0, 1]."""
    derivative = weil_derivative(c, psi).to_trig()
    norm, _ = sup_norm(derivative, refine=tol)
    return norm


def compose_property_check(c: FourierCoefficients, psi1: PsiWeight, psi2: PsiWeight,
                           tol: float = 1e-10) -> float:
    """
    Max coefficient discrepancy between the (ψ₂/ψ₁, β₂−β₁)-derivative of the
    (ψ₁,β₁)-derivative and the (ψ₂,β₂)-derivative taken directly.
    """
    two_stage = weil_derivative(weil_derivative(c, psi1), ratio(psi2, psi1))
    direct = weil_derivative(c, psi2)
    discrepancy = float(max(np.max(np.abs(two_stage.a - direct.a)), np.max(np.abs(two_stage.b - direct.b))))
    if discrepancy > tol:
        logger.warning(f"composition discrepancy {discrepancy:.3e} exceeds tol {tol:.1e}")
    return discrepancy
