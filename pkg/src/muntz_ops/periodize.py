"""
Periodization of Müntz polynomials.
"""

from dataclasses import dataclass
from typing import Any, Dict, Union

import numpy as np

from ..core.muntz import MuntzPolynomial

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PeriodizedMuntz:
    """
    v(t) = p(r) + (p(0) − p(1))·r with r = t mod 1.

    v(0) and the limit of v at 1⁻ both equal p(0), so v is continuous and
    1-periodic.
    """

    p: MuntzPolynomial

    @property
    def slope(self) -> float:
        return float(self.p(0.0)) - float(self.p(1.0))

    def __call__(self, t: ArrayLike) -> ArrayLike:
        r = np.mod(np.asarray(t, dtype=float), 1.0)
        out = np.asarray(self.p(r)) + self.slope * r
        return float(out) if np.ndim(out) == 0 else out

    def to_dict(self) -> Dict[str, Any]:
        return {"muntz": self.p.to_dict(), "slope": self.slope}


def periodize(p: MuntzPolynomial) -> PeriodizedMuntz:
    return PeriodizedMuntz(p)
