#!/usr/bin/env python3
"""
Utility modules for muntzbasis.

Provides logging, error handling, experiment configuration and artifact
writing. FileHandler lives in utils.file_handler and is imported from there,
since it depends on the numeric packages.
"""

# Logger utilities
from .logger import (
    LoggerMixin,
    ProgressLogger,
    get_logger,
    log_configuration,
    setup_logging
)

# Error handling utilities
from .error_handler import (
    AccuracyError,
    ConfigurationError,
    DegenerateInputError,
    DivisionError,
    DomainError,
    ErrorCategory,
    ErrorHandler,
    ErrorSeverity,
    EvaluationError,
    ExitCode,
    MatrixError,
    MuntzError,
    OptimizationError,
    PreconditionError,
    RankError,
    ShapeError,
    TruncationError
)

# Configuration utilities
from .config_loader import (
    ConfigLoader,
    ExperimentConfig,
    load_experiment,
    parse_float_list,
    parse_int_list,
    parse_lambda
)

# Output formatting utilities
from .output_formatter import (
    OutputFormatter,
    to_jsonable
)

__all__ = [
    # Logger
    'LoggerMixin',
    'ProgressLogger',
    'get_logger',
    'log_configuration',
    'setup_logging',

    # Error handler
    'AccuracyError',
    'ConfigurationError',
    'DegenerateInputError',
    'DivisionError',
    'DomainError',
    'ErrorCategory',
    'ErrorHandler',
    'ErrorSeverity',
    'EvaluationError',
    'ExitCode',
    'MatrixError',
    'MuntzError',
    'OptimizationError',
    'PreconditionError',
    'RankError',
    'ShapeError',
    'TruncationError',

    # Config loader
    'ConfigLoader',
    'ExperimentConfig',
    'load_experiment',
    'parse_float_list',
    'parse_int_list',
    'parse_lambda',

    # Output formatter
    'OutputFormatter',
    'to_jsonable'
]
