"""
Fourier coefficients, partial sums, summation methods and Lebesgue constants.
"""

from .summation import (
    ConvergenceReport,
    ConvergenceRow,
    SummationMatrix,
    convergence_experiment,
    kernel,
    lebesgue_constant,
    summation_apply,
)
from .trig import (
    FourierCoefficients,
    TrigPolynomial,
    convolve_periodic,
    fourier_coefficients,
    partial_sum,
    young_bound,
)

__all__ = [
    'ConvergenceReport',
    'ConvergenceRow',
    'SummationMatrix',
    'convergence_experiment',
    'kernel',
    'lebesgue_constant',
    'summation_apply',
    'FourierCoefficients',
    'TrigPolynomial',
    'convolve_periodic',
    'fourier_coefficients',
    'partial_sum',
    'young_bound',
]
