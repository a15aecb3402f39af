"""
Müntz-space constructions: Remez-type ratios, exponent transforms and
shifts, weak-L_s quasi-norms, derivative diagnostics and periodization.
"""

from ..core.exponents import transform_exponents
from .periodize import PeriodizedMuntz, periodize
from .derivative_check import DerivativeReport, derivative_weak_l1_check, disc_maximum
from .remez import RemezEstimate, remez_eta_estimate, remez_ratio
from .shift import ChainResult, ExponentShiftPlan, ShiftResult, compose_shift_chain, exponent_shift_operator
from .weak import WeakNormResult, level_set_measure, weak_norm

__all__ = [
    'transform_exponents',
    'PeriodizedMuntz',
    'periodize',
    'DerivativeReport',
    'derivative_weak_l1_check',
    'disc_maximum',
    'RemezEstimate',
    'remez_eta_estimate',
    'remez_ratio',
    'ChainResult',
    'ExponentShiftPlan',
    'ShiftResult',
    'compose_shift_chain',
    'exponent_shift_operator',
    'WeakNormResult',
    'level_set_measure',
    'weak_norm',
]
