"""
Best uniform trigonometric approximation and the experiments built on it.
"""

from .experiments import (
    AsymptoticReport,
    AsymptoticRow,
    RateReport,
    RateRow,
    asymptotic_check,
    leading_terms,
    rate_experiment,
    rate_statistics,
    sample_coefficients,
)
from .minimax import (
    ApproxResult,
    MinimaxSolution,
    alternation_count,
    best_trig_approx,
    rho_n,
    solve_discrete_minimax,
    trig_design,
    witness_from_columns,
)

__all__ = [
    'AsymptoticReport',
    'AsymptoticRow',
    'RateReport',
    'RateRow',
    'asymptotic_check',
    'leading_terms',
    'rate_experiment',
    'rate_statistics',
    'sample_coefficients',
    'ApproxResult',
    'MinimaxSolution',
    'alternation_count',
    'best_trig_approx',
    'rho_n',
    'solve_discrete_minimax',
    'trig_design',
    'witness_from_columns',
]
