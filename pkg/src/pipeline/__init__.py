"""
Experiment pipeline for muntzbasis.

The runner dispatches a resolved experiment config to the library; the
function catalog supplies the named test functions.
"""

from .experiment_runner import ExperimentRunner, RunOutcome
from .function_catalog import FUNCTIONS, CatalogEntry, resolve_function, sequence_from_params

__all__ = [
    'ExperimentRunner',
    'RunOutcome',
    'FUNCTIONS',
    'CatalogEntry',
    'resolve_function',
    'sequence_from_params'
]
