#!/usr/bin/env python3
"""
Logging utilities for muntzbasis

Provides console logging (rich formatting when available), optional file
logging, and small helpers for long seeded loops.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

try:
    from rich.console import Console
    from rich.logging import RichHandler
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False


APP_LOGGER_NAME = "muntzbasis"


def setup_logging(verbose: bool = False, level: str = "INFO",
                  log_file: Optional[Union[str, Path]] = None) -> logging.Logger:
    """
    Setup logging for the application.

    Console output goes to standard error so that artifacts written to
    standard output stay clean.

    Args:
        verbose: Enable verbose (DEBUG) logging
        level: Logging level string
        log_file: Optional log file path; no file logging when omitted

    Returns:
        Configured application logger
    """
    if verbose:
        log_level = logging.DEBUG
    else:
        log_level = getattr(logging, str(level).upper(), logging.INFO)

    root_logger = logging.getLogger()
    root_logger.handlers.clear()

    if RICH_AVAILABLE:
        console_handler: logging.Handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            show_time=verbose,
            show_path=verbose
        )
        console_format = "%(message)s"
    else:
        console_handler = logging.StreamHandler(sys.stderr)
        console_format = "%(asctime)s - %(levelname)s - %(message)s" if verbose else "%(levelname)s - %(message)s"

    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(console_format))

    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, mode='a', encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
        ))
        root_logger.addHandler(file_handler)

    logger = logging.getLogger(APP_LOGGER_NAME)
    logger.debug(f"Log level: {logging.getLevelName(log_level)}")
    logger.debug(f"Log file: {log_file or 'disabled'}")
    logger.debug(f"Rich formatting: {'enabled' if RICH_AVAILABLE else 'disabled'}")

    return logger


def get_logger(name: str = APP_LOGGER_NAME) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


class LoggerMixin:
    """
    Mixin class to add logging capabilities to any class.
    """

    @property
    def logger(self) -> logging.Logger:
        """Get logger for this class."""
        return get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")

    def log_info(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log info message."""
        self.logger.info(message, *args, **kwargs)

    def log_debug(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log debug message."""
        self.logger.debug(message, *args, **kwargs)

    def log_warning(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log warning message."""
        self.logger.warning(message, *args, **kwargs)

    def log_error(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log error message."""
        self.logger.error(message, *args, **kwargs)


def log_configuration(config: Dict[str, Any]) -> None:
    """Log resolved experiment configuration."""
    logger = get_logger()
    logger.info("Configuration resolved:")
    for key, value in config.items():
        logger.debug(f"  {key}: {value}")


class ProgressLogger:
    """
    Utility class for logging progress during long seeded loops.
    """

    def __init__(self, total_items: int, operation_name: str = "Processing",
                 logger: Optional[logging.Logger] = None):
        self.total_items = max(int(total_items), 1)
        self.operation_name = operation_name
        self.processed_items = 0
        self.logger = logger or get_logger()
        self.last_logged_percentage = -10

    def update(self, increment: int = 1) -> None:
        """Update progress and log if threshold reached."""
        self.processed_items += increment
        percentage = int((self.processed_items / self.total_items) * 100)

        # every 10% or at completion
        if (percentage >= self.last_logged_percentage + 10 or
                self.processed_items >= self.total_items):
            self.logger.debug(f"{self.operation_name}: {self.processed_items}/{self.total_items} "
                              f"({percentage}%) complete")
            self.last_logged_percentage = percentage

    def complete(self) -> None:
        """Log completion."""
        self.logger.info(f"{self.operation_name} completed: {self.processed_items}/{self.total_items} items")
