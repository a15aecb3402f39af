"""
Müntz polynomials Σ aₙ t^{λₙ} on [0, 1].
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from ..utils.error_handler import DomainError, ShapeError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class MuntzPolynomial:
    """
    Finite Müntz polynomial with distinct, ascending positive exponents.

    Instances are callable on scalars or numpy arrays of points in [0, 1].
    """

    terms: Tuple[Tuple[float, float], ...]

    def __post_init__(self) -> None:
        terms = tuple((float(lam), float(a)) for lam, a in self.terms)
        object.__setattr__(self, "terms", terms)
        exps = [lam for lam, _ in terms]
        if not all(math.isfinite(lam) and lam > 0 for lam in exps):
            raise DomainError("Müntz exponents must be finite and positive")
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise DomainError("Müntz exponents must be distinct and ascending")

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[float, float]]) -> "MuntzPolynomial":
        """Sort terms and merge repeated exponents by adding coefficients."""
        merged: Dict[float, float] = {}
        for lam, a in terms:
            merged[float(lam)] = merged.get(float(lam), 0.0) + float(a)
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def monomial(cls, exponent: float, coefficient: float = 1.0) -> "MuntzPolynomial":
        return cls(((float(exponent), float(coefficient)),))

    @classmethod
    def from_coefficients(cls, exponents: Sequence[float], coefficients: Sequence[float]) -> "MuntzPolynomial":
        if len(exponents) != len(coefficients):
            raise ShapeError("exponent and coefficient lists differ in length",
                             context={'exponents': len(exponents), 'coefficients': len(coefficients)})
        return cls.from_terms(zip(exponents, coefficients))

    @property
    def exponents(self) -> np.ndarray:
        return np.array([lam for lam, _ in self.terms], dtype=float)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([a for _, a in self.terms], dtype=float)

    @property
    def is_zero(self) -> bool:
        return all(a == 0.0 for _, a in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __call__(self, t: ArrayLike) -> ArrayLike:
        t_arr = np.asarray(t, dtype=float)
        if not self.terms:
            out = np.zeros_like(t_arr)
        else:
            out = np.power.outer(t_arr, self.exponents) @ self.coefficients
        return float(out) if out.ndim == 0 else out

    def derivative_values(self, t: ArrayLike) -> ArrayLike:
        """Term-wise derivative Σ aₙλₙ t^{λₙ−1}; infinite at t=0 when some λₙ < 1."""
        t_arr = np.asarray(t, dtype=float)
        if not self.terms:
            out = np.zeros_like(t_arr)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                powers = np.power.outer(t_arr, self.exponents - 1.0)
            out = powers @ (self.coefficients * self.exponents)
        return float(out) if out.ndim == 0 else out

    def substitute_power(self, alpha: float) -> "MuntzPolynomial":
        """p(t^α) as a Müntz polynomial in t."""
        if not alpha > 0:
            raise DomainError(f"alpha must be positive, got {alpha}")
        return MuntzPolynomial(tuple((alpha * lam, a) for lam, a in self.terms))

    def with_exponents(self, exponents: Sequence[float]) -> "MuntzPolynomial":
        """Same coefficients placed on new exponents."""
        if len(exponents) != len(self.terms):
            raise ShapeError("exponent count does not match the polynomial",
                             context={'expected': len(self.terms), 'got': len(exponents)})
        return MuntzPolynomial(tuple((float(mu), a) for mu, (_, a) in zip(exponents, self.terms)))

    def __add__(self, other: "MuntzPolynomial") -> "MuntzPolynomial":
        return MuntzPolynomial.from_terms(self.terms + other.terms)

    def __sub__(self, other: "MuntzPolynomial") -> "MuntzPolynomial":
        return MuntzPolynomial.from_terms(self.terms + tuple((lam, -a) for lam, a in other.terms))

    def __mul__(self, c: float) -> "MuntzPolynomial":
        return MuntzPolynomial(tuple((lam, c * a) for lam, a in self.terms))

    __rmul__ = __mul__

    def to_dict(self) -> Dict[str, Any]:
        return {"terms": [[lam, a] for lam, a in self.terms]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MuntzPolynomial":
        return cls.from_terms((lam, a) for lam, a in data["terms"])


def eval_muntz(p: MuntzPolynomial, t: ArrayLike) -> ArrayLike:
    """
    Evaluate p at points of [0, 1].

    Raises:
        DomainError: if any point lies outside [0, 1]
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t_arr)) or np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise DomainError("Müntz polynomials are evaluated on [0, 1] only",
                          context={'t': t_arr.tolist() if t_arr.size < 8 else 'array'})
    return p(t_arr)
