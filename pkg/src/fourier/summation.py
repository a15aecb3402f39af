"""
Triangular-matrix summation methods, their kernels and Lebesgue constants.

A method Q is a lower-triangular array q_{n,k} (0 <= k <= n). Applied to
Fourier coefficients it gives
    U_n(f, x, Q) = q_{n,0} a0/2 + Σ_{k=1..n} q_{n,k} (a_k cos 2πkx + b_k sin 2πkx)
and its kernel is U_n(x, Q) = q_{n,0}/2 + Σ q_{n,k} cos 2πkx.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from ..core.norms import sup_norm
from ..utils.error_handler import DomainError, MatrixError, TruncationError
from ..utils.logger import get_logger
from .trig import FourierCoefficients, TrigPolynomial, fourier_coefficients

logger = get_logger(__name__)

METHODS = ("dirichlet", "fejer", "vallee-poussin", "table")


def _dirichlet_row(n: int) -> np.ndarray:
    return np.ones(n + 1)


def _fejer_row(n: int) -> np.ndarray:
    return 1.0 - np.arange(n + 1) / (n + 1)


def _vallee_poussin_row(n: int) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    half = n // 2
    return np.where(k <= half, 1.0, (n + 1 - k) / (n + 1 - half))


_ROW_RULES: Dict[str, Callable[[int], np.ndarray]] = {
    "dirichlet": _dirichlet_row,
    "fejer": _fejer_row,
    "vallee-poussin": _vallee_poussin_row,
}


@dataclass(frozen=True)
class SummationMatrix:
    """
    Lower-triangular summation method.

    Named methods generate every row; a "table" method holds only the rows
    it was built from.
    """

    name: str
    table: Tuple[Tuple[float, ...], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.name not in METHODS:
            raise DomainError(f"unknown summation method '{self.name}'", context={'known': METHODS})
        rows = tuple(tuple(float(q) for q in row) for row in self.table)
        for n, row in enumerate(rows):
            if row and len(row) != n + 1:
                raise MatrixError(f"row {n} must hold exactly {n + 1} entries", context={'row': n})
        object.__setattr__(self, "table", rows)

    @classmethod
    def dirichlet(cls) -> "SummationMatrix":
        return cls("dirichlet")

    @classmethod
    def fejer(cls) -> "SummationMatrix":
        return cls("fejer")

    @classmethod
    def vallee_poussin(cls) -> "SummationMatrix":
        return cls("vallee-poussin")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "SummationMatrix":
        """Explicit rows; an empty row marks n as undefined."""
        return cls("table", tuple(tuple(row) for row in rows))

    @classmethod
    def from_name(cls, name: str) -> "SummationMatrix":
        aliases = {"fejér": "fejer", "vp": "vallee-poussin", "de-la-vallee-poussin": "vallee-poussin"}
        return cls(aliases.get(name.lower(), name.lower()))

    def row(self, n: int) -> np.ndarray:
        """q_{n,0..n}."""
        if n < 0:
            raise MatrixError(f"row index must be >= 0, got {n}")
        if self.name != "table":
            return _ROW_RULES[self.name](n)
        if n >= len(self.table) or not self.table[n]:
            raise MatrixError(f"row {n} is not defined for this summation table",
                              context={'rows': len(self.table)})
        return np.array(self.table[n])

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"method": self.name}
        if self.name == "table":
            data["rows"] = [list(row) for row in self.table]
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SummationMatrix":
        if data.get("method") == "table":
            return cls.from_rows(data.get("rows", ()))
        return cls.from_name(data["method"])


def summation_apply(c: FourierCoefficients, Q: SummationMatrix, n: int) -> TrigPolynomial:
    """U_n(f, ·, Q) from the coefficients of f."""
    q = Q.row(n)
    if n > c.K:
        raise TruncationError(f"summation row {n} needs K >= {n}, have {c.K}", context={'n': n, 'K': c.K})
    harmonics = tuple((q[k] * a, q[k] * b) for k, (a, b) in enumerate(c.pairs[:n], start=1))
    return TrigPolynomial(q[0] * c.a0, harmonics)


def kernel(Q: SummationMatrix, n: int) -> TrigPolynomial:
    """U_n(x, Q) = q_{n,0}/2 + Σ q_{n,k} cos 2πkx."""
    q = Q.row(n)
    return TrigPolynomial(q[0], tuple((float(qk), 0.0) for qk in q[1:]))


def lebesgue_constant(Q: SummationMatrix, n: int, tol: float = 1e-10) -> float:
    """𝖫_n(Q) = 2∫₀¹ |U_n(t, Q)| dt, integrated between the kernel's zeros."""
    k = kernel(Q, n)
    return 2.0 * k.l1_norm(0.5 * tol)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    error: float
    argmax: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Sup-norm errors ‖U_n(f) − f‖_C with trend diagnostics."""

    method: str
    rows: Tuple[ConvergenceRow, ...]
    strictly_decreasing: bool
    decay_exponent: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "rows": [{"n": r.n, "error": r.error, "argmax": r.argmax} for r in self.rows],
            "strictly_decreasing": self.strictly_decreasing,
            "decay_exponent": self.decay_exponent,
        }


def convergence_experiment(f: Callable[[np.ndarray], np.ndarray], Q: SummationMatrix, n_list: Sequence[int],
                           K: Optional[int] = None, tol: float = 1e-10, coefficient_factor: int = 4,
                           breakpoints: Iterable[float] = ()) -> ConvergenceReport:
    """
    ‖U_n(f, ·, Q) − f‖_C for each n in n_list.

    K defaults to coefficient_factor · max(n_list). The decay exponent is the
    negated log-log slope when every error is positive.
    """
    ns = sorted(int(n) for n in n_list)
    if not ns or ns[0] < 0:
        raise DomainError("n_list must be non-empty with n >= 0")
    K = K or coefficient_factor * max(ns[-1], 1)
    coeffs = fourier_coefficients(f, K, tol, breakpoints=breakpoints)

    rows: List[ConvergenceRow] = []
    for n in ns:
        u = summation_apply(coeffs, Q, n)
        error, argmax = sup_norm(lambda x, u=u: u(x) - np.asarray(f(x), dtype=float))
        rows.append(ConvergenceRow(n, error, argmax))
        logger.debug(f"{Q.name} n={n}: error={error:.3e}")

    errors = np.array([r.error for r in rows])
    decreasing = bool(np.all(np.diff(errors) < 0))
    decay = None
    positive_n = np.array([r.n for r in rows]) > 0
    if np.count_nonzero(positive_n) >= 2 and np.all(errors[positive_n] > 0):
        fit = linregress(np.log([r.n for r in rows if r.n > 0]), np.log(errors[positive_n]))
        decay = float(-fit.slope)
    return ConvergenceReport(Q.name, tuple(rows), decreasing, decay)
