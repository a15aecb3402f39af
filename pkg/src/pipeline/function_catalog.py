#!/usr/bin/env python3
"""
Named test functions for the fourier-approx, best-approx and weak-norm
commands.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Mapping, Tuple

import numpy as np

from ..approx.experiments import sample_coefficients
from ..core.exponents import ExponentSequence
from ..core.norms import sup_norm
from ..muntz_ops.periodize import periodize
from ..utils.error_handler import ConfigurationError, DegenerateInputError

Function = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    f: Function
    breakpoints: Tuple[float, ...] = ()
    description: str = ""


def sequence_from_params(params: Mapping[str, Any]) -> ExponentSequence:
    """ExponentSequence from flat rule parameters (rule, p/base/values, scale, shift, extra, N)."""
    rule = params.get("rule", "power")
    keys = {"power": ("p", "scale", "shift", "extra"), "geometric": ("base", "scale", "shift", "extra"),
            "explicit": ("values",)}.get(rule)
    if keys is None:
        raise ConfigurationError(f"unknown exponent rule '{rule}'")
    rule_params = {key: params[key] for key in keys if key in params}
    missing = {"power": "p", "geometric": "base", "explicit": "values"}[rule]
    if missing not in rule_params:
        raise ConfigurationError(f"rule '{rule}' needs '{missing}'")
    return ExponentSequence.from_rule(rule, rule_params, params.get("N"))


def _triangle(x: np.ndarray) -> np.ndarray:
    return np.abs(2.0 * np.mod(x, 1.0) - 1.0)


def _periodized_muntz(params: Mapping[str, Any], seed: int) -> Function:
    if "rule" not in params:
        params = {"rule": "power", "p": 2.0, "N": 64, **params}
    seq = sequence_from_params(params)
    terms = int(params.get("terms", min(len(seq), 32)))
    p = sample_coefficients(seq, terms, float(params.get("rho", 0.9)), seed)[0]
    v = periodize(p)
    norm, _ = sup_norm(v)
    if norm == 0.0:
        raise DegenerateInputError("periodized Müntz function vanishes")
    return lambda x: np.asarray(v(x)) / norm


def resolve_function(name: str, params: Mapping[str, Any], seed: int = 0x5EED) -> CatalogEntry:
    """
    Build a catalog function.

    Raises:
        ConfigurationError: unknown name
    """
    if name == "cos":
        return CatalogEntry(name, lambda x: np.cos(2.0 * np.pi * np.asarray(x)), (), "cos 2πx")
    if name == "cos-sin":
        return CatalogEntry(name, lambda x: np.cos(2.0 * np.pi * np.asarray(x)) + np.sin(6.0 * np.pi * np.asarray(x)),
                            (), "cos 2πx + sin 6πx")
    if name == "triangle":
        return CatalogEntry(name, _triangle, (0.5,), "|2x − 1| extended periodically")
    if name == "constant":
        value = float(params.get("value", 1.0))
        return CatalogEntry(name, lambda x: np.full(np.shape(x), value), (), f"constant {value}")
    if name == "linear":
        return CatalogEntry(name, lambda x: 2.0 * np.mod(x, 1.0), (), "2x on [0, 1), extended periodically")
    if name == "cauchy":
        return CatalogEntry(name, lambda x: 1.0 / (2.0 * np.pi * (1.0 - np.asarray(x))), (), "1/(2π(1 − t))")
    if name == "periodized-muntz":
        return CatalogEntry(name, _periodized_muntz(params, seed), (),
                            "unit-norm periodized Müntz polynomial with coefficients ±ρⁿ/λₙ")
    raise ConfigurationError(f"unknown function '{name}'")


FUNCTIONS: Dict[str, str] = {
    "cos": "cos 2πx",
    "cos-sin": "cos 2πx + sin 6πx",
    "triangle": "|2x − 1| extended periodically",
    "constant": "constant (param value)",
    "linear": "2x on [0, 1)",
    "cauchy": "1/(2π(1 − t))",
    "periodized-muntz": "unit-norm periodized Müntz polynomial",
}
