"""
muntzbasis - Müntz Polynomial and Fourier Summation Experiments

A numerical library and CLI for periodized Müntz spaces on [0, 1]:
exponent-sequence checks, Fourier summation methods and Lebesgue constants,
Weil (ψ, β)-derivatives, certified best trigonometric approximation,
exponent-shift bounds, weak-L_s norms and Schauder-type basis construction
by Gaussian exclusion.

Usage:
    from src.core import ExponentSequence
    from src.fourier import SummationMatrix, lebesgue_constant

    seq = ExponentSequence.power(2, 1000)
    print(seq.alpha0, seq.alpha1)
    print(lebesgue_constant(SummationMatrix.dirichlet(), 1))

License: MIT
Version: 0.1.0
"""

__version__ = "0.1.0"
__license__ = "MIT"
__description__ = "Numerical experiments on Müntz polynomials, Fourier summation and Schauder-type bases"

__all__ = ['__version__', '__license__', '__description__']
