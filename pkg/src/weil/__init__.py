"""
Weil (ψ,β)-derivatives, the kernel 𝒟_{ψ,β} and ψ-class checks.
"""

from .derivative import compose_property_check, weil_derivative, weil_nagy_norm, weil_reconstruct
from .kernel import KernelValue, abel_tail, convolution_representation, dpsi_kernel, psi_kernel_polynomial
from .psi import PsiClassReport, PsiWeight, ratio, validate_psi_class

__all__ = [
    'compose_property_check',
    'weil_derivative',
    'weil_nagy_norm',
    'weil_reconstruct',
    'KernelValue',
    'abel_tail',
    'convolution_representation',
    'dpsi_kernel',
    'psi_kernel_polynomial',
    'PsiClassReport',
    'PsiWeight',
    'ratio',
    'validate_psi_class',
]
