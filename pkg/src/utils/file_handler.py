#!/usr/bin/env python3
"""
File handling utilities for muntzbasis

Loads and saves the JSON inputs the CLI reads: exponent sequences,
trigonometric polynomials, ψ weights, Müntz polynomials, shift targets and
step systems.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from ..basis.elimination import StepSystem
from ..core.exponents import ExponentSequence
from ..core.muntz import MuntzPolynomial
from ..fourier.trig import TrigPolynomial
from ..weil.psi import PsiWeight
from .error_handler import ConfigurationError


class FileHandler:
    """
    Handles JSON file operations for experiment inputs.

    Missing files and malformed JSON propagate as OSError and
    json.JSONDecodeError; files with the wrong shape raise
    ConfigurationError.
    """

    def __init__(self):
        """Initialize the file handler."""
        self.logger = logging.getLogger(__name__)

    def load_json_file(self, file_path: Union[str, Path], encoding: str = 'utf-8') -> Any:
        """
        Load a JSON file.

        Args:
            file_path: Path to JSON file
            encoding: File encoding

        Returns:
            Parsed JSON data
        """
        file_path = Path(file_path)
        if not file_path.exists():
            raise FileNotFoundError(f"File not found: {file_path}")
        try:
            with open(file_path, 'r', encoding=encoding) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Failed to load JSON file {file_path}: {e}")
            raise
        self.logger.debug(f"Loaded JSON data from {file_path}")
        return data

    def save_json_file(self, data: Any, file_path: Union[str, Path], encoding: str = 'utf-8',
                       indent: int = 2) -> None:
        """
        Save data to a JSON file with sorted keys.

        Args:
            data: Data to save
            file_path: Output file path
            encoding: File encoding
            indent: JSON indentation
        """
        file_path = Path(file_path)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, 'w', encoding=encoding) as f:
                json.dump(data, f, indent=indent, sort_keys=True, ensure_ascii=False)
        except OSError as e:
            self.logger.error(f"Failed to save JSON file {file_path}: {e}")
            raise
        self.logger.debug(f"Saved JSON data to {file_path}")

    def _require(self, data: Any, keys: List[str], what: str, file_path: Union[str, Path]) -> Dict[str, Any]:
        if not isinstance(data, dict) or any(key not in data for key in keys):
            raise ConfigurationError(f"{file_path} is not a {what} file (needs {', '.join(keys)})",
                                     context={'file': str(file_path)})
        return data

    def load_sequence(self, file_path: Union[str, Path]) -> ExponentSequence:
        data = self._require(self.load_json_file(file_path), ["rule"], "exponent sequence", file_path)
        return ExponentSequence.from_dict(data)

    def load_trig(self, file_path: Union[str, Path]) -> TrigPolynomial:
        data = self._require(self.load_json_file(file_path), ["harmonics"], "trigonometric polynomial", file_path)
        return TrigPolynomial.from_dict(data)

    def load_psi(self, file_path: Union[str, Path]) -> PsiWeight:
        data = self._require(self.load_json_file(file_path), ["rule"], "psi weight", file_path)
        return PsiWeight.from_dict(data)

    def load_muntz(self, file_path: Union[str, Path]) -> MuntzPolynomial:
        data = self._require(self.load_json_file(file_path), ["terms"], "Müntz polynomial", file_path)
        return MuntzPolynomial.from_dict(data)

    def load_targets(self, file_path: Union[str, Path]) -> List[List[float]]:
        """
        Shift targets: {"exponents": [...]} for one step, or
        {"targets": [[...], [...]]} for a chain.
        """
        data = self.load_json_file(file_path)
        if isinstance(data, dict) and "targets" in data:
            return [[float(v) for v in target] for target in data["targets"]]
        data = self._require(data, ["exponents"], "shift target", file_path)
        return [[float(v) for v in data["exponents"]]]

    def load_step_system(self, file_path: Union[str, Path]) -> StepSystem:
        data = self.load_json_file(file_path)
        if isinstance(data, dict) and "result" in data and isinstance(data["result"], dict):
            # artifacts written by basis-build carry the system under result.system
            data = data["result"].get("system", data["result"])
        data = self._require(data, ["rows"], "step system", file_path)
        return StepSystem.from_dict(data)
