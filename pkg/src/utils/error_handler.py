#!/usr/bin/env python3
"""
Error Handling Framework for muntzbasis

Defines the library exception hierarchy and the ErrorHandler that turns
exceptions into structured reports and CLI exit codes.
"""

import json
import logging
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from .logger import LoggerMixin


class ErrorSeverity:
    """Error severity levels."""
    LOW = "LOW"
    MEDIUM = "MEDIUM"
    HIGH = "HIGH"
    CRITICAL = "CRITICAL"


class ErrorCategory:
    """Error categories for classification."""
    DOMAIN = "DOMAIN"
    DEGENERATE_INPUT = "DEGENERATE_INPUT"
    PRECONDITION = "PRECONDITION"
    SHAPE = "SHAPE"
    MATRIX = "MATRIX"
    RANK = "RANK"
    DIVISION = "DIVISION"
    TRUNCATION = "TRUNCATION"
    EVALUATION = "EVALUATION"
    ACCURACY = "ACCURACY"
    OPTIMIZATION = "OPTIMIZATION"
    CONFIGURATION = "CONFIGURATION"
    FILE_IO = "FILE_IO"
    USER_INPUT = "USER_INPUT"
    SYSTEM = "SYSTEM"


class ExitCode:
    """Process exit statuses of the CLI."""
    SUCCESS = 0
    UNEXPECTED = 1
    PRECONDITION = 2
    ACCURACY = 3
    IO = 4


_EXIT_BY_CATEGORY = {
    ErrorCategory.DOMAIN: ExitCode.PRECONDITION,
    ErrorCategory.DEGENERATE_INPUT: ExitCode.PRECONDITION,
    ErrorCategory.PRECONDITION: ExitCode.PRECONDITION,
    ErrorCategory.SHAPE: ExitCode.PRECONDITION,
    ErrorCategory.MATRIX: ExitCode.PRECONDITION,
    ErrorCategory.RANK: ExitCode.PRECONDITION,
    ErrorCategory.DIVISION: ExitCode.PRECONDITION,
    ErrorCategory.TRUNCATION: ExitCode.PRECONDITION,
    ErrorCategory.CONFIGURATION: ExitCode.PRECONDITION,
    ErrorCategory.USER_INPUT: ExitCode.PRECONDITION,
    ErrorCategory.ACCURACY: ExitCode.ACCURACY,
    ErrorCategory.OPTIMIZATION: ExitCode.ACCURACY,
    ErrorCategory.EVALUATION: ExitCode.ACCURACY,
    ErrorCategory.FILE_IO: ExitCode.IO,
}


class MuntzError(Exception):
    """Base exception for all library errors."""

    category = ErrorCategory.SYSTEM
    severity = ErrorSeverity.MEDIUM

    def __init__(self, message: str, category: Optional[str] = None,
                 severity: Optional[str] = None, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        if category is not None:
            self.category = category
        if severity is not None:
            self.severity = severity
        self.context = context or {}


class DomainError(MuntzError):
    """Argument outside the mathematical domain of an operation."""
    category = ErrorCategory.DOMAIN


class DegenerateInputError(MuntzError):
    """Input too small or too degenerate for the operation."""
    category = ErrorCategory.DEGENERATE_INPUT


class PreconditionError(MuntzError):
    """A checked mathematical precondition does not hold."""
    category = ErrorCategory.PRECONDITION
    severity = ErrorSeverity.HIGH


class ShapeError(MuntzError):
    """Mismatched exponents, plans or coefficient lengths."""
    category = ErrorCategory.SHAPE


class MatrixError(MuntzError):
    """Summation matrix row not defined."""
    category = ErrorCategory.MATRIX


class RankError(MuntzError):
    """Degenerate span."""
    category = ErrorCategory.RANK


class TruncationError(MuntzError):
    """Request beyond the available coefficient truncation."""
    category = ErrorCategory.TRUNCATION


class EvaluationError(MuntzError):
    """Non-finite value met while evaluating a function."""
    category = ErrorCategory.EVALUATION


class ConfigurationError(MuntzError):
    """Invalid experiment configuration."""
    category = ErrorCategory.CONFIGURATION
    severity = ErrorSeverity.HIGH


class DivisionError(MuntzError):
    """Zero multiplier at an active harmonic."""
    category = ErrorCategory.DIVISION

    def __init__(self, k: int, message: Optional[str] = None, **kwargs: Any):
        super().__init__(message or f"psi({k}) vanishes at active harmonic k={k}", **kwargs)
        self.k = k
        self.context.setdefault('k', k)


class AccuracyError(MuntzError):
    """Requested tolerance not reached; carries the best estimate."""
    category = ErrorCategory.ACCURACY

    def __init__(self, message: str, best_estimate: Any = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.best_estimate = best_estimate


class OptimizationError(MuntzError):
    """Solver did not converge; carries the solver trace."""
    category = ErrorCategory.OPTIMIZATION
    severity = ErrorSeverity.HIGH

    def __init__(self, message: str, trace: Optional[Dict[str, Any]] = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.trace = trace or {}


class ErrorHandler(LoggerMixin):
    """
    Error handling for the experiment CLI.

    Categorizes exceptions, logs them at a severity-dependent level, keeps a
    history and maps each error to a process exit code.
    """

    def __init__(self, debug_mode: bool = False, error_log_file: Optional[str] = None):
        """
        Initialize the error handler.

        Args:
            debug_mode: Log full tracebacks
            error_log_file: Optional file that receives detailed JSON error records
        """
        self.debug_mode = debug_mode
        self.error_log_file = error_log_file
        self.error_count = 0
        self.error_history: List[Dict[str, Any]] = []

        self.error_logger = logging.getLogger('muntzbasis.errors')
        if error_log_file:
            Path(error_log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(error_log_file)
            file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
            self.error_logger.addHandler(file_handler)
            self.error_logger.setLevel(logging.ERROR)

    def handle_error(self, error: BaseException, context: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Handle an error with logging and categorization.

        Args:
            error: The exception that occurred
            context: Additional context information

        Returns:
            Dictionary with error id, category, severity and exit code
        """
        self.error_count += 1
        context = context or {}

        error_info = self._analyze_error(error, context)
        self._log_error(error_info)
        self.error_history.append(error_info)

        return {
            'error_handled': True,
            'error_id': error_info['error_id'],
            'severity': error_info['severity'],
            'category': error_info['category'],
            'exit_code': error_info['exit_code'],
        }

    def exit_code_for(self, error: BaseException) -> int:
        """Map an exception to its CLI exit status."""
        return _EXIT_BY_CATEGORY.get(self._categorize_error(error), ExitCode.UNEXPECTED)

    def _analyze_error(self, error: BaseException, context: Dict[str, Any]) -> Dict[str, Any]:
        """Analyze an error to determine its characteristics."""
        error_id = f"ERR_{self.error_count:04d}"
        category = self._categorize_error(error)
        severity = self._assess_severity(error, category)

        info: Dict[str, Any] = {
            'error_id': error_id,
            'timestamp': datetime.now().isoformat(),
            'error_type': type(error).__name__,
            'error_message': str(error),
            'category': category,
            'severity': severity,
            'exit_code': _EXIT_BY_CATEGORY.get(category, ExitCode.UNEXPECTED),
            'context': context,
            'traceback': traceback.format_exception(type(error), error, error.__traceback__),
        }
        if isinstance(error, MuntzError) and error.context:
            info['error_context'] = error.context
        if isinstance(error, AccuracyError):
            info['best_estimate'] = error.best_estimate
        if isinstance(error, OptimizationError):
            info['solver_trace'] = error.trace
        return info

    def _categorize_error(self, error: BaseException) -> str:
        """Categorize an error based on its type."""
        if isinstance(error, MuntzError):
            return error.category
        if isinstance(error, (json.JSONDecodeError, OSError)):
            return ErrorCategory.FILE_IO
        if isinstance(error, (ValueError, TypeError)):
            return ErrorCategory.USER_INPUT
        return ErrorCategory.SYSTEM

    def _assess_severity(self, error: BaseException, category: str) -> str:
        """Assess the severity of an error."""
        if isinstance(error, (MemoryError, SystemError, KeyboardInterrupt)):
            return ErrorSeverity.CRITICAL
        if isinstance(error, MuntzError):
            return error.severity
        if category == ErrorCategory.FILE_IO:
            return ErrorSeverity.HIGH
        if category == ErrorCategory.USER_INPUT:
            return ErrorSeverity.MEDIUM
        return ErrorSeverity.HIGH

    def _log_error(self, error_info: Dict[str, Any]) -> None:
        """Log error information with appropriate detail level."""
        log_message = (f"[{error_info['error_id']}] {error_info['category']} "
                       f"{error_info['error_type']}: {error_info['error_message']}")

        if error_info['severity'] in (ErrorSeverity.CRITICAL, ErrorSeverity.HIGH):
            self.log_error(log_message)
        elif error_info['severity'] == ErrorSeverity.MEDIUM:
            self.log_warning(log_message)
        else:
            self.log_info(log_message)

        if self.error_log_file:
            self.error_logger.error(json.dumps(error_info, indent=2, default=str))

        if self.debug_mode:
            self.log_debug("Full traceback:")
            for line in error_info['traceback']:
                self.log_debug(line.rstrip())

    def get_error_summary(self) -> Dict[str, Any]:
        """Get a summary of all handled errors."""
        if not self.error_history:
            return {'total_errors': 0, 'summary': 'No errors recorded'}

        category_counts: Dict[str, int] = {}
        severity_counts: Dict[str, int] = {}
        for error in self.error_history:
            category_counts[error['category']] = category_counts.get(error['category'], 0) + 1
            severity_counts[error['severity']] = severity_counts.get(error['severity'], 0) + 1

        return {
            'total_errors': len(self.error_history),
            'by_category': category_counts,
            'by_severity': severity_counts,
            'most_recent': self.error_history[-1]['timestamp'],
            'critical_errors': severity_counts.get(ErrorSeverity.CRITICAL, 0)
        }

    def export_error_report(self, output_file: Optional[str] = None) -> str:
        """
        Export an error report as JSON.

        Args:
            output_file: Optional output file path

        Returns:
            Path to the generated report
        """
        if not output_file:
            output_file = f"logs/error_report_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"

        report = {
            'report_generated': datetime.now().isoformat(),
            'summary': self.get_error_summary(),
            'detailed_errors': self.error_history,
            'system_info': {
                'python_version': sys.version,
                'platform': sys.platform,
            }
        }

        output_path = Path(output_file)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2, default=str)

        self.log_info(f"Error report exported to: {output_path}")
        return str(output_path)
