#!/usr/bin/env python3
"""
Experiment configuration loading and validation.

An experiment config names one CLI command, its parameters, the seed and
where the artifact goes. Config files share the flag schema; flags given on
the command line win over file values. Every command has a JSON schema with
additionalProperties set to false, so unknown keys are rejected.
"""

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from jsonschema import Draft7Validator

from .error_handler import ConfigurationError
from .logger import get_logger

logger = get_logger(__name__)

COMMANDS = (
    "check-lambda", "fourier-approx", "lebesgue", "weil-deriv", "best-approx", "rate-experiment",
    "asymptotic", "remez-eta", "theorem5", "weak-norm", "prop10", "basis-build", "basis-validate",
)
FORMATS = ("json", "csv")
FUNCTION_NAMES = ("cos", "cos-sin", "triangle", "constant", "linear", "cauchy", "periodized-muntz")
SUMMATION_METHODS = ("dirichlet", "fejer", "vallee-poussin")

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_COUNT = {"type": "integer", "minimum": 1}
_INT_LIST = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}
_NUM_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_PATH = {"type": "string", "minLength": 1}

LAMBDA_PROPERTIES: Dict[str, Any] = {
    "rule": {"enum": ["power", "geometric", "explicit"]},
    "p": _POSITIVE,
    "base": {"type": "number", "exclusiveMinimum": 1},
    "values": {"type": "array", "items": _POSITIVE, "minItems": 1},
    "scale": _POSITIVE,
    "shift": {"type": "number", "minimum": 0},
    "extra": {"type": "array", "items": _POSITIVE},
    "N": _COUNT,
}

FUNCTION_PROPERTIES: Dict[str, Any] = {
    "function": {"enum": list(FUNCTION_NAMES)},
    "value": _NUMBER,
    "rho": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    "terms": _COUNT,
    **LAMBDA_PROPERTIES,
}

COMMAND_PROPERTIES: Dict[str, Dict[str, Any]] = {
    "check-lambda": dict(LAMBDA_PROPERTIES),
    "fourier-approx": {**FUNCTION_PROPERTIES, "method": {"enum": list(SUMMATION_METHODS)},
                       "n": _INT_LIST, "K": _COUNT, "tol": _POSITIVE},
    "lebesgue": {"method": {"enum": list(SUMMATION_METHODS)}, "n": _INT_LIST, "tol": _POSITIVE},
    "weil-deriv": {"input": _PATH, "psi_rule": {"enum": ["power", "log"]}, "r": _NUMBER,
                   "beta": _NUMBER, "K": _COUNT, "tol": _POSITIVE},
    "best-approx": {**FUNCTION_PROPERTIES, "n": _INT_LIST, "grid_factor": {"type": "integer", "minimum": 8},
                    "refinement_passes": {"type": "integer", "minimum": 0}, "tol": _POSITIVE},
    "rate-experiment": {**LAMBDA_PROPERTIES, "gamma": {"type": "number", "exclusiveMinimum": 0,
                                                       "exclusiveMaximum": 1},
                        "n": _INT_LIST, "samples": _COUNT,
                        "rho": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                        "terms": _COUNT, "grid_factor": {"type": "integer", "minimum": 8},
                        "refinement_passes": {"type": "integer", "minimum": 0}},
    "asymptotic": {"alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                   "x": _NUM_LIST, "K": _COUNT, "certify_tol": _POSITIVE},
    "remez-eta": {**LAMBDA_PROPERTIES, "delta": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                  "samples": _COUNT, "terms": _COUNT},
    "theorem5": {"from": _PATH, "to": _PATH, "delta": {"type": "number", "minimum": 0}},
    "weak-norm": {**FUNCTION_PROPERTIES, "s": _POSITIVE, "a": _NUMBER, "b": _NUMBER, "scan_points": _COUNT},
    "prop10": {"input": _PATH, "polynomial": {"type": "array", "minItems": 1,
                                              "items": {"type": "array", "items": _NUMBER,
                                                        "minItems": 2, "maxItems": 2}},
               "scan_points": _COUNT, "disc_points": _COUNT},
    "basis-build": {**LAMBDA_PROPERTIES, "method": {"enum": list(SUMMATION_METHODS)}, "degrees": _INT_LIST,
                    "pivot_tol": _POSITIVE, "rank_tol": _POSITIVE},
    "basis-validate": {"input": _PATH, "L": _COUNT, "probes": _COUNT, "grid_m": _COUNT,
                       "directions": _COUNT},
}

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "check-lambda": {"rule": "power", "p": 2.0, "N": 1000},
    "fourier-approx": {"function": "triangle", "method": "fejer", "n": [1, 2, 4, 8, 16, 32], "tol": 1e-10},
    "lebesgue": {"method": "fejer", "n": list(range(1, 33)), "tol": 1e-10},
    "weil-deriv": {"psi_rule": "power", "r": 2.0, "beta": 1.0, "K": 1024, "tol": 1e-9},
    "best-approx": {"function": "triangle", "n": [1, 2, 4, 8], "refinement_passes": 1, "tol": 1e-9},
    "rate-experiment": {"rule": "power", "p": 2.0, "N": 64, "gamma": 0.5, "n": [4, 8, 16, 32, 64, 128],
                        "samples": 1, "rho": 0.9, "terms": 32, "refinement_passes": 1},
    "asymptotic": {"alpha": 0.5, "x": [0.005, 0.01, 0.02, 0.05, 0.1], "K": 10 ** 6, "certify_tol": 1e-6},
    "remez-eta": {"rule": "power", "p": 2.0, "N": 16, "delta": 0.5, "samples": 1000, "terms": 8},
    "theorem5": {},
    "weak-norm": {"function": "linear", "s": 1.0, "a": 0.0, "b": 1.0},
    "prop10": {"polynomial": [[2.0, 1.0]]},
    "basis-build": {"rule": "geometric", "base": 2.0, "N": 8, "method": "fejer", "degrees": [2, 4, 8, 16]},
    "basis-validate": {"L": 6, "probes": 200},
}

REQUIRED: Dict[str, List[str]] = {
    "theorem5": ["from", "to"],
    "basis-validate": ["input"],
}


def command_schema(command: str) -> Dict[str, Any]:
    """JSON schema of the resolved parameter map for one command."""
    if command not in COMMAND_PROPERTIES:
        raise ConfigurationError(f"unknown command '{command}'", context={'known': COMMANDS})
    return {
        "type": "object",
        "properties": COMMAND_PROPERTIES[command],
        "required": REQUIRED.get(command, []),
        "additionalProperties": False,
    }


FILE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "params": {"type": "object"},
        "seed": {"type": "integer", "minimum": 0},
        "output": {"type": ["string", "null"]},
        "format": {"enum": list(FORMATS)},
    },
    "additionalProperties": False,
}


def parse_int_list(text: str) -> List[int]:
    """'1..32', '2,4,8' or a mix such as '1..4,8,16'."""
    values: List[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        match = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if match:
            lo, hi = int(match.group(1)), int(match.group(2))
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(part))
    if not values:
        raise ConfigurationError(f"empty integer list '{text}'")
    return values


def parse_float_list(text: str) -> List[float]:
    values = [float(part) for part in str(text).split(",") if part.strip()]
    if not values:
        raise ConfigurationError(f"empty number list '{text}'")
    return values


def parse_lambda(text: str) -> Dict[str, Any]:
    """Shorthand 'power:2', 'geometric:2' or 'explicit:1,2.5,4' as rule parameters."""
    rule, _, arg = str(text).partition(":")
    rule = rule.strip().lower()
    try:
        if rule == "power":
            return {"rule": "power", "p": float(arg)}
        if rule == "geometric":
            return {"rule": "geometric", "base": float(arg)}
        if rule == "explicit":
            return {"rule": "explicit", "values": parse_float_list(arg)}
    except ValueError as e:
        raise ConfigurationError(f"invalid --lambda value '{text}': {e}")
    raise ConfigurationError(f"unknown exponent rule in --lambda '{text}'",
                             context={'known': ["power", "geometric", "explicit"]})


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment: command, typed parameters, seed and artifact target."""

    command: str
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0x5EED
    output: Optional[str] = None
    format: str = "json"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": dict(self.params),
            "seed": self.seed,
            "output": self.output,
            "format": self.format,
        }


class ConfigLoader:
    """Loads, merges and validates experiment configs."""

    def load_experiment(self, config_path: str) -> Dict[str, Any]:
        """
        Read an experiment config file.

        Raises:
            OSError, json.JSONDecodeError: unreadable file
            ConfigurationError: the file does not match the config schema
        """
        with open(Path(config_path), 'r', encoding='utf-8') as f:
            data = json.load(f)
        self._validate(data, FILE_SCHEMA, f"config file {config_path}")
        logger.info(f"Loaded experiment config from {config_path}")
        return data

    def merge_configs(self, file_config: Mapping[str, Any], flag_config: Mapping[str, Any]) -> Dict[str, Any]:
        """Merge two configs; flag values win, params are merged key by key."""
        merged = dict(file_config)
        for key, value in flag_config.items():
            if key == "params":
                merged["params"] = {**dict(merged.get("params", {})), **dict(value)}
            else:
                merged[key] = value
        return merged

    def resolve(self, command: str, flag_config: Mapping[str, Any],
                config_path: Optional[str] = None, default_seed: int = 0x5EED) -> ExperimentConfig:
        """
        Defaults, then the config file, then flags; validated against the
        command schema.

        Raises:
            ConfigurationError: unknown keys, wrong types, or a config file
                written for another command
        """
        file_config: Dict[str, Any] = self.load_experiment(config_path) if config_path else {}
        if file_config.get("command", command) != command:
            raise ConfigurationError(
                f"config file is for '{file_config['command']}', not '{command}'",
                context={'config': config_path}
            )
        merged = self.merge_configs(file_config, flag_config)
        given = dict(merged.get("params", {}))
        defaults = dict(COMMAND_DEFAULTS.get(command, {}))
        if "rule" in given:
            # a rule given by the user drops the default rule's parameters
            for key in ("p", "base", "values"):
                defaults.pop(key, None)
        params = {**defaults, **given}
        self._validate(params, command_schema(command), f"parameters of '{command}'")

        seed = int(merged.get("seed", default_seed))
        fmt = merged.get("format", "json")
        if fmt not in FORMATS:
            raise ConfigurationError(f"unknown format '{fmt}'", context={'known': FORMATS})
        return ExperimentConfig(command, params, seed, merged.get("output"), fmt)

    def _validate(self, data: Any, schema: Dict[str, Any], what: str) -> None:
        errors = sorted(Draft7Validator(schema).iter_errors(data), key=lambda e: list(e.path))
        if errors:
            first = errors[0]
            where = "/".join(str(p) for p in first.path) or "<root>"
            raise ConfigurationError(f"invalid {what}: {where}: {first.message}",
                                     context={'errors': [e.message for e in errors[:5]]})

    def save_experiment(self, config: ExperimentConfig, output_path: str) -> None:
        """Write a resolved config so it can be replayed with --config."""
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(config.to_dict(), f, indent=2, sort_keys=True)
        logger.info(f"Experiment config saved to {output_path}")


def load_experiment(config_path: str) -> Dict[str, Any]:
    """Load an experiment config with the default ConfigLoader."""
    return ConfigLoader().load_experiment(config_path)
