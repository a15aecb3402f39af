"""
Difference monomial system u₁ = t^{λ₁}, u_{n+1} = t^{λ_{n+1}} − t^{λ_n}.

Partial sums telescope: u₁ + … + u_n = t^{λ_n}. A Müntz polynomial
g = Σ c_n t^{λ_n} expands as Σ p_k u_k with p_k = c_k + … + c_N.
"""

from typing import List, Sequence

import numpy as np

from ..core.exponents import ExponentSequence
from ..core.muntz import MuntzPolynomial
from ..utils.error_handler import DomainError, ShapeError

READINGS = ("suffix", "prefix")


def difference_system(seq: ExponentSequence, N: int) -> List[MuntzPolynomial]:
    """
    u₁..u_N over the first N exponents of seq.

    Raises:
        DomainError: N < 1 or N > len(seq)
    """
    if not 1 <= N <= len(seq):
        raise DomainError(f"N must lie in [1, {len(seq)}], got {N}")
    lam = seq.exponents[:N]
    system = [MuntzPolynomial.monomial(lam[0])]
    for prev, cur in zip(lam, lam[1:]):
        system.append(MuntzPolynomial(((prev, -1.0), (cur, 1.0))))
    return system


def difference_coefficients(c: Sequence[float], reading: str = "suffix") -> np.ndarray:
    """
    Coefficients p of Σ p_k u_k from monomial coefficients c.

    "suffix" gives p_k = c_k + … + c_N, which reproduces Σ c_n t^{λ_n};
    "prefix" gives p_k = c₁ + … + c_k and is kept for comparison.
    """
    c = np.asarray(c, dtype=float)
    if reading == "suffix":
        return np.cumsum(c[::-1])[::-1]
    if reading == "prefix":
        return np.cumsum(c)
    raise DomainError(f"unknown reading '{reading}'", context={'known': READINGS})


def expand_difference(p: Sequence[float], system: Sequence[MuntzPolynomial]) -> MuntzPolynomial:
    """Σ p_k u_k collected as a Müntz polynomial."""
    if len(p) != len(system):
        raise ShapeError("coefficient count does not match the system",
                         context={'coefficients': len(p), 'system': len(system)})
    terms = []
    for pk, u in zip(p, system):
        terms.extend((lam, float(pk) * a) for lam, a in u.terms)
    return MuntzPolynomial.from_terms(terms)


def relation_residual(c: Sequence[float], seq: ExponentSequence, reading: str = "suffix") -> float:
    """max_n |c_n − coefficient of t^{λ_n} in Σ p_k u_k| for the chosen reading."""
    c = np.asarray(c, dtype=float)
    system = difference_system(seq, c.size)
    g = expand_difference(difference_coefficients(c, reading), system)
    coeff = dict(g.terms)
    return float(max(abs(cn - coeff.get(lam, 0.0)) for lam, cn in zip(seq.exponents[:c.size], c)))
