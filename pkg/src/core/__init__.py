"""
Numeric substrate: exponent sequences, Müntz polynomials, grids,
quadrature and sup-norm estimation.
"""

from .exponents import (
    ExponentSequence,
    check_gap_condition,
    condition_verdict,
    muntz_sum,
    transform_exponents,
)
from .muntz import MuntzPolynomial, eval_muntz
from .norms import chebyshev_points, sup_norm
from .quadrature import integrate, integrate_abs, sign_changes
from .sampling import Grid, SampledFunction

__all__ = [
    'ExponentSequence',
    'check_gap_condition',
    'condition_verdict',
    'muntz_sum',
    'transform_exponents',
    'MuntzPolynomial',
    'eval_muntz',
    'chebyshev_points',
    'sup_norm',
    'integrate',
    'integrate_abs',
    'sign_changes',
    'Grid',
    'SampledFunction',
]
