"""
Real trigonometric polynomials and truncated Fourier coefficient vectors.

Conventions:
    value(x) = a0/2 + Σ_k (a_k cos 2πkx + b_k sin 2πkx)
    a_k = 2∫₀¹ f(t) cos(2πkt) dt,  b_k = 2∫₀¹ f(t) sin(2πkt) dt,  a0 = 2∫₀¹ f
    (h*g)(x) = 2∫₀¹ h(x − t) g(t) dt

Coefficient vectors are laid out as [a0, a1, b1, a2, b2, ...].
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid

from ..core.norms import sup_norm
from ..core.quadrature import integrate, integrate_abs
from ..core.sampling import SampledFunction
from ..utils.error_handler import DomainError, ShapeError, TruncationError
from ..utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]
Periodic = Callable[[np.ndarray], np.ndarray]

PROVENANCES = ("exact", "quadrature", "trapezoid")


def _pairs(harmonics: Iterable[Sequence[float]]) -> Tuple[Tuple[float, float], ...]:
    pairs = []
    for pair in harmonics:
        if len(pair) != 2:
            raise ShapeError("each harmonic is an (a_k, b_k) pair", context={'pair': list(pair)})
        pairs.append((float(pair[0]), float(pair[1])))
    return tuple(pairs)


@dataclass(frozen=True)
class TrigPolynomial:
    """1-periodic real trigonometric polynomial a0/2 + Σ (a_k cos 2πkx + b_k sin 2πkx)."""

    a0: float = 0.0
    harmonics: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "harmonics", _pairs(self.harmonics))

    @classmethod
    def constant(cls, value: float) -> "TrigPolynomial":
        return cls(2.0 * value, ())

    @classmethod
    def cosine(cls, k: int, amplitude: float = 1.0) -> "TrigPolynomial":
        return cls(0.0, tuple((amplitude, 0.0) if j == k else (0.0, 0.0) for j in range(1, k + 1)))

    @classmethod
    def sine(cls, k: int, amplitude: float = 1.0) -> "TrigPolynomial":
        return cls(0.0, tuple((0.0, amplitude) if j == k else (0.0, 0.0) for j in range(1, k + 1)))

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "TrigPolynomial":
        """Inverse of coefficient_vector; a trailing lone cosine column is allowed."""
        v = np.asarray(vector, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ShapeError("coefficient vector must be a non-empty 1-D array")
        rest = v[1:]
        if rest.size % 2:
            rest = np.append(rest, 0.0)
        return cls(float(v[0]), tuple(zip(rest[0::2].tolist(), rest[1::2].tolist())))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TrigPolynomial":
        return cls(float(data.get("a0", 0.0)), _pairs(data.get("harmonics", ())))

    @property
    def degree(self) -> int:
        return len(self.harmonics)

    @property
    def a(self) -> np.ndarray:
        return np.array([p[0] for p in self.harmonics], dtype=float)

    @property
    def b(self) -> np.ndarray:
        return np.array([p[1] for p in self.harmonics], dtype=float)

    def __call__(self, x: ArrayLike) -> ArrayLike:
        x_arr = np.asarray(x, dtype=float)
        out = np.full(x_arr.shape, 0.5 * self.a0)
        if self.harmonics:
            phase = 2.0 * np.pi * np.multiply.outer(x_arr, np.arange(1, self.degree + 1))
            out = out + np.cos(phase) @ self.a + np.sin(phase) @ self.b
        return float(out) if out.ndim == 0 else out

    def coefficient_vector(self, degree: Optional[int] = None) -> np.ndarray:
        """[a0, a1, b1, ...], zero-padded (or truncated) to the given degree."""
        deg = self.degree if degree is None else degree
        v = np.zeros(1 + 2 * deg)
        v[0] = self.a0
        m = min(deg, self.degree)
        if m:
            v[1:1 + 2 * m:2] = self.a[:m]
            v[2:2 + 2 * m:2] = self.b[:m]
        return v

    def padded(self, degree: int) -> "TrigPolynomial":
        return TrigPolynomial.from_vector(self.coefficient_vector(max(degree, self.degree)))

    def normalize(self) -> "TrigPolynomial":
        """Drop trailing all-zero harmonic pairs."""
        pairs = list(self.harmonics)
        while pairs and pairs[-1] == (0.0, 0.0):
            pairs.pop()
        return TrigPolynomial(self.a0, tuple(pairs))

    def active_harmonics(self) -> np.ndarray:
        """Frequencies k >= 1 with (a_k, b_k) != (0, 0)."""
        return np.array([k for k, (a, b) in enumerate(self.harmonics, start=1) if a or b], dtype=int)

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        deg = max(self.degree, other.degree)
        return TrigPolynomial.from_vector(self.coefficient_vector(deg) + other.coefficient_vector(deg))

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-1.0) * other

    def __mul__(self, c: float) -> "TrigPolynomial":
        return TrigPolynomial(c * self.a0, tuple((c * a, c * b) for a, b in self.harmonics))

    __rmul__ = __mul__

    def convolve(self, other: "TrigPolynomial") -> "TrigPolynomial":
        """
        Exact 2∫h(x−t)u(t)dt in coefficient space.

        a0 multiplies; each harmonic multiplies as the complex number a_k − i b_k.
        """
        deg = min(self.degree, other.degree)
        h = self.a[:deg] - 1j * self.b[:deg]
        u = other.a[:deg] - 1j * other.b[:deg]
        product = h * u
        return TrigPolynomial(self.a0 * other.a0, tuple(zip(product.real.tolist(), (-product.imag).tolist())))

    def l1_norm(self, tol: float = 1e-10) -> float:
        """∫₀¹ |u(t)| dt."""
        return integrate_abs(self, 0.0, 1.0, tol, scan_points=16 * (self.degree + 1) + 64)

    def to_dict(self) -> Dict[str, Any]:
        return {"a0": self.a0, "harmonics": [[a, b] for a, b in self.harmonics]}


@dataclass(frozen=True)
class FourierCoefficients:
    """
    a0 and (a_k, b_k) for k = 1..K, tagged with where they came from.

    Quadrature and trapezoid provenance carry the tolerance used.
    """

    a0: float
    pairs: Tuple[Tuple[float, float], ...]
    provenance: str = "exact"
    tol: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "pairs", _pairs(self.pairs))
        if self.provenance not in PROVENANCES:
            raise DomainError(f"unknown provenance '{self.provenance}'")
        if not self.pairs:
            raise TruncationError("Fourier coefficients need K >= 1")
        if self.provenance != "exact" and self.tol is None:
            raise DomainError("computed coefficients must carry their tolerance")

    @classmethod
    def from_trig(cls, p: TrigPolynomial, K: Optional[int] = None) -> "FourierCoefficients":
        """Exact coefficients of a trigonometric polynomial, padded to K."""
        K = max(1, p.degree) if K is None else K
        if K < 1:
            raise TruncationError("Fourier coefficients need K >= 1")
        padded = p.padded(K)
        return cls(padded.a0, padded.harmonics[:K], "exact")

    @property
    def K(self) -> int:
        return len(self.pairs)

    @property
    def a(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=float)

    @property
    def b(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=float)

    def to_trig(self) -> TrigPolynomial:
        return TrigPolynomial(self.a0, self.pairs)

    def to_dict(self) -> Dict[str, Any]:
        return {"a0": self.a0, "harmonics": [[a, b] for a, b in self.pairs],
                "provenance": self.provenance, "tol": self.tol}


def _trapezoid_coefficients(sf: SampledFunction, K: int) -> Tuple[float, np.ndarray, np.ndarray]:
    x = np.asarray(sf.points)
    v = np.asarray(sf.values)
    if x[0] != 0.0:
        raise DomainError("sampled periodic functions must include the point 0")
    if x[-1] < 1.0:
        x = np.append(x, 1.0)
        v = np.append(v, v[0])
    k = np.arange(1, K + 1)
    phase = 2.0 * np.pi * np.outer(k, x)
    a0 = 2.0 * trapezoid(v, x)
    a = 2.0 * trapezoid(np.cos(phase) * v, x, axis=1)
    b = 2.0 * trapezoid(np.sin(phase) * v, x, axis=1)
    return float(a0), a, b


def fourier_coefficients(f: Union[Periodic, SampledFunction, TrigPolynomial], K: int, tol: float = 1e-10,
                         breakpoints: Iterable[float] = (), max_panels: int = 20000) -> FourierCoefficients:
    """
    a0, a_k, b_k (k = 1..K) of a 1-periodic function.

    Callables go through vector-valued adaptive quadrature, so all 2K+1
    integrals share panels. Sampled functions use the trapezoid rule on
    their grid. Trigonometric polynomials are read off exactly.

    Raises:
        TruncationError: K < 1
        AccuracyError: quadrature did not reach tol
    """
    if K < 1:
        raise TruncationError("Fourier coefficients need K >= 1", context={'K': K})
    if isinstance(f, TrigPolynomial):
        return FourierCoefficients.from_trig(f, K)
    if isinstance(f, SampledFunction):
        if not f.periodic:
            raise DomainError("Fourier coefficients need a periodic sampled function")
        a0, a, b = _trapezoid_coefficients(f, K)
        return FourierCoefficients(a0, tuple(zip(a.tolist(), b.tolist())), "trapezoid", tol)

    k = np.arange(1, K + 1)

    def integrand(t: np.ndarray) -> np.ndarray:
        values = np.asarray(f(t), dtype=float) * np.ones_like(t)
        phase = 2.0 * np.pi * np.outer(t, k)
        return np.column_stack([values, np.cos(phase) * values[:, None], np.sin(phase) * values[:, None]])

    # halved so that the doubled coefficients stay within tol
    totals = integrate(integrand, 0.0, 1.0, 0.5 * tol, max_panels=max_panels,
                       breakpoints=breakpoints, initial_panels=max(8, K))
    totals = 2.0 * np.asarray(totals)
    a, b = totals[1:K + 1], totals[K + 1:]
    logger.debug(f"Fourier coefficients computed by quadrature: K={K}, tol={tol:g}")
    return FourierCoefficients(float(totals[0]), tuple(zip(a.tolist(), b.tolist())), "quadrature", tol)


def partial_sum(c: FourierCoefficients, n: int) -> TrigPolynomial:
    """S_n = a0/2 + Σ_{k≤n} (a_k cos + b_k sin)."""
    if n < 0:
        raise DomainError(f"partial sum index must be >= 0, got {n}")
    if n > c.K:
        raise TruncationError(f"partial sum of order {n} needs K >= {n}, have {c.K}",
                              context={'n': n, 'K': c.K})
    return TrigPolynomial(c.a0, c.pairs[:n])


def convolve_periodic(h: Periodic, g: Periodic, x: ArrayLike, tol: float = 1e-10,
                      initial_panels: Optional[int] = None, max_panels: int = 20000) -> ArrayLike:
    """
    (h*g)(x) = 2∫₀¹ h(x − t) g(t) dt by quadrature, vectorized over x.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if initial_panels is None:
        degrees = [p.degree for p in (h, g) if isinstance(p, TrigPolynomial)]
        initial_panels = max(16, 2 * sum(degrees))

    def integrand(t: np.ndarray) -> np.ndarray:
        shifted = np.mod(np.subtract.outer(x_arr, t), 1.0).T
        g_vals = np.asarray(g(t), dtype=float) * np.ones_like(t)
        return 2.0 * np.asarray(h(shifted), dtype=float) * g_vals[:, None]

    values = np.asarray(integrate(integrand, 0.0, 1.0, tol, max_panels=max_panels,
                                  initial_panels=initial_panels))
    values = values * np.ones_like(x_arr)
    return float(values[0]) if np.ndim(x) == 0 else values


def young_bound(h: TrigPolynomial, u: TrigPolynomial, tol: float = 1e-10) -> Dict[str, Any]:
    """
    Compare ‖h*u‖_C with 2‖h‖_C‖u‖_{L₁}.

    Returns:
        dict with lhs, rhs and holds (lhs <= rhs + 10·tol)
    """
    lhs, _ = sup_norm(h.convolve(u))
    h_sup, _ = sup_norm(h)
    rhs = 2.0 * h_sup * u.l1_norm(tol)
    return {"lhs": lhs, "rhs": rhs, "holds": bool(lhs <= rhs + 10.0 * tol)}
