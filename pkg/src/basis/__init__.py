"""
Step-system construction from periodized Müntz functions and its
finite-section basis diagnostics.
"""

from .candidates import CandidateSet, build_candidates, candidates_from_sequence
from .difference import difference_coefficients, difference_system, expand_difference, relation_residual
from .elimination import StepSystem, frequency_of_column, gaussian_exclusion, span_residual
from .inclination import InclinationResult, inclination
from .validation import BasisSectionReport, ProjectionNorm, ladder_errors, validate_basis_section

__all__ = [
    'CandidateSet',
    'build_candidates',
    'candidates_from_sequence',
    'difference_coefficients',
    'difference_system',
    'expand_difference',
    'relation_residual',
    'StepSystem',
    'frequency_of_column',
    'gaussian_exclusion',
    'span_residual',
    'InclinationResult',
    'inclination',
    'BasisSectionReport',
    'ProjectionNorm',
    'ladder_errors',
    'validate_basis_section',
]
