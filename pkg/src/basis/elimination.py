"""
Gaussian exclusion of trigonometric candidates into a step system.

Columns follow the ladder e₁ = 1, e₂ = cos 2πx, e₃ = sin 2πx, e₄ = cos 4πx, …
which is the coefficient-vector order [a0, a1, b1, a2, b2, ...]. Pivots are
the largest entry of the current column among the remaining rows, ties to
the lowest row index. Rows are scaled to unit sup norm after elimination.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..core.norms import sup_norm
from ..fourier.trig import TrigPolynomial
from ..utils.error_handler import DegenerateInputError, MatrixError
from ..utils.logger import get_logger

logger = get_logger(__name__)

NORM_TOL = 1e-9
# entries below this share of a row's largest entry are elimination noise
_CLEAN_RTOL = 1e-14


def frequency_of_column(column: int) -> int:
    """Frequency of a 1-based ladder index: 1 → 0, 2 and 3 → 1, 4 and 5 → 2, …"""
    return column // 2


def _leading_column(v: np.ndarray) -> int:
    nz = np.nonzero(v)[0]
    return int(nz[0]) + 1 if nz.size else 0


@dataclass(frozen=True)
class StepSystem:
    """
    Rows r_l with unit sup norm and strictly increasing leading ladder columns.

    lead holds m(l), the lowest active frequency of each row; high holds n(l),
    its degree; lead_columns the 1-based ladder index of the leading entry.
    rejected lists the candidate indices eliminated as dependent.
    """

    rows: Tuple[TrigPolynomial, ...]
    lead: Tuple[int, ...]
    high: Tuple[int, ...]
    lead_columns: Tuple[int, ...]
    rejected: Tuple[int, ...] = ()

    @classmethod
    def from_rows(cls, rows: Sequence[TrigPolynomial], rejected: Sequence[int] = ()) -> "StepSystem":
        rows = tuple(r.normalize() for r in rows)
        columns = tuple(_leading_column(r.coefficient_vector()) for r in rows)
        lead = tuple(frequency_of_column(c) for c in columns)
        high = tuple(r.degree for r in rows)
        return cls(rows, lead, high, columns, tuple(rejected))

    def __len__(self) -> int:
        return len(self.rows)

    def coefficient_matrix(self) -> np.ndarray:
        degree = max((r.degree for r in self.rows), default=0)
        return np.array([r.coefficient_vector(degree) for r in self.rows]).reshape(len(self.rows), 1 + 2 * degree)

    def section(self, L: int) -> "StepSystem":
        return StepSystem(self.rows[:L], self.lead[:L], self.high[:L], self.lead_columns[:L], self.rejected)

    def check_invariants(self, norm_tol: float = NORM_TOL) -> Dict[str, bool]:
        """Unit norms, strictly increasing leading columns, nonzero lead and top harmonics."""
        norms_ok = all(abs(sup_norm(r)[0] - 1.0) <= norm_tol for r in self.rows)
        step_ok = all(b > a for a, b in zip(self.lead_columns, self.lead_columns[1:]))
        ends_ok = True
        for r, m, n in zip(self.rows, self.lead, self.high):
            if m >= 1:
                am, bm = r.harmonics[m - 1]
                an, bn = r.harmonics[n - 1]
                ends_ok = ends_ok and am * am + bm * bm > 0 and an * an + bn * bn > 0
        return {"unit_norm": norms_ok, "upper_trapezoidal": step_ok, "nonzero_ends": ends_ok}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [r.to_dict() for r in self.rows],
            "lead": list(self.lead),
            "high": list(self.high),
            "lead_columns": list(self.lead_columns),
            "rejected": list(self.rejected),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "StepSystem":
        system = cls.from_rows([TrigPolynomial.from_dict(r) for r in data["rows"]], data.get("rejected", ()))
        for key in ("lead", "high"):
            if key in data and list(data[key]) != list(getattr(system, key)):
                raise MatrixError(f"stored '{key}' disagrees with the rows",
                                  context={'stored': list(data[key]), 'computed': list(getattr(system, key))})
        return system


def gaussian_exclusion(candidates: Sequence[TrigPolynomial], pivot_tol: float = 1e-10,
                       refine: float = 1e-9) -> StepSystem:
    """
    Row-echelon form of the candidate coefficient matrix.

    Each candidate is first scaled by its largest coefficient, so pivot_tol
    is relative. Candidates whose rows run out of pivots are rejected as
    dependent and their indices recorded.

    Raises:
        DegenerateInputError: no candidates, or a zero candidate
    """
    if not candidates:
        raise DegenerateInputError("gaussian exclusion needs at least one candidate")
    degree = max(c.degree for c in candidates)
    M = np.array([c.coefficient_vector(degree) for c in candidates], dtype=float)
    scale = np.max(np.abs(M), axis=1)
    if np.any(scale == 0.0):
        raise DegenerateInputError("zero candidate", context={'index': int(np.argmin(scale))})
    M = M / scale[:, None]
    order = list(range(len(candidates)))

    pivot_row = 0
    for col in range(M.shape[1]):
        if pivot_row == M.shape[0]:
            break
        block = np.abs(M[pivot_row:, col])
        best = int(np.argmax(block))
        if block[best] < pivot_tol:
            M[pivot_row:, col] = 0.0
            continue
        p = pivot_row + best
        if p != pivot_row:
            M[[pivot_row, p]] = M[[p, pivot_row]]
            order[pivot_row], order[p] = order[p], order[pivot_row]
        factors = M[pivot_row + 1:, col] / M[pivot_row, col]
        M[pivot_row + 1:] -= np.outer(factors, M[pivot_row])
        M[pivot_row + 1:, col] = 0.0
        pivot_row += 1

    rejected = sorted(order[pivot_row:])
    if rejected:
        logger.info(f"gaussian exclusion rejected {len(rejected)} dependent candidates: {rejected}")

    rows: List[TrigPolynomial] = []
    for v in M[:pivot_row]:
        v = np.where(np.abs(v) < _CLEAN_RTOL * np.max(np.abs(v)), 0.0, v)
        r = TrigPolynomial.from_vector(v).normalize()
        norm, _ = sup_norm(r, refine=refine)
        rows.append(r * (1.0 / norm))
    return StepSystem.from_rows(rows, rejected)


def span_residual(system: StepSystem, candidates: Sequence[TrigPolynomial]) -> float:
    """
    Largest relative coefficient residual of a candidate against the span of
    the system rows.
    """
    degree = max([c.degree for c in candidates] + [r.degree for r in system.rows])
    R = np.array([r.coefficient_vector(degree) for r in system.rows]).T
    worst = 0.0
    for c in candidates:
        v = c.coefficient_vector(degree)
        coef, *_ = np.linalg.lstsq(R, v, rcond=None)
        worst = max(worst, float(np.max(np.abs(v - R @ coef)) / np.max(np.abs(v))))
    return worst
