"""
Adaptive composite Gauss-Legendre quadrature.

Panels use 10 Gauss-Legendre nodes. A panel is accepted when its value and
the sum over its two halves agree within the panel's share of the
tolerance; otherwise it is bisected. Integrands are evaluated on node
arrays and may return one value per node or a row of values per node
(vector-valued integrands, used for batches of Fourier coefficients).
"""

from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from ..utils.error_handler import AccuracyError, DomainError, EvaluationError
from ..utils.logger import get_logger

logger = get_logger(__name__)

GAUSS_POINTS = 10
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_POINTS)

Integrand = Callable[[np.ndarray], Union[float, np.ndarray]]


def _panel(f: Integrand, lo: float, hi: float) -> np.ndarray:
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    pts = mid + half * _NODES
    vals = np.asarray(f(pts), dtype=float)
    if vals.ndim == 0:
        vals = np.full(GAUSS_POINTS, float(vals))
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("integrand returned a non-finite value",
                              context={'panel': (lo, hi)})
    return half * np.tensordot(_WEIGHTS, vals, axes=(0, 0))


def _initial_panels(a: float, b: float, breakpoints: Iterable[float], per_piece: int) -> List[Tuple[float, float]]:
    edges = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    panels = []
    for lo, hi in zip(edges, edges[1:]):
        sub = np.linspace(lo, hi, per_piece + 1)
        panels.extend(zip(sub[:-1], sub[1:]))
    return panels


def integrate(f: Integrand, a: float, b: float, tol: float = 1e-10, max_panels: int = 20000,
              breakpoints: Iterable[float] = (), initial_panels: int = 1) -> Union[float, np.ndarray]:
    """
    ∫_a^b f(t) dt by adaptive 10-point Gauss-Legendre panels.

    Args:
        f: vectorized integrand
        a, b: interval ends, a < b
        tol: absolute tolerance on the whole integral
        max_panels: hard cap on the number of panels
        breakpoints: known kinks, used as panel edges
        initial_panels: uniform panels per piece before adaptation

    Returns:
        float for scalar integrands, ndarray for vector-valued ones

    Raises:
        AccuracyError: tolerance not reached within max_panels; carries the
            best estimate
    """
    if not b > a:
        raise DomainError(f"integration needs a < b, got [{a}, {b}]")
    width = b - a
    stack = [(lo, hi, _panel(f, lo, hi))
             for lo, hi in reversed(_initial_panels(a, b, breakpoints, max(1, initial_panels)))]
    panel_count = len(stack)
    total: Optional[np.ndarray] = None
    error_estimate = 0.0
    exhausted = False

    while stack:
        lo, hi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        halves = left + right
        diff = float(np.max(np.abs(halves - whole)))
        share = tol * (hi - lo) / width
        # panels below this width cannot be split meaningfully in double precision
        tiny = (hi - lo) <= 64 * np.finfo(float).eps * max(1.0, abs(a), abs(b))

        if diff <= share or tiny:
            total = halves if total is None else total + halves
            continue
        if panel_count >= max_panels:
            exhausted = True
            error_estimate += diff
            total = halves if total is None else total + halves
            continue
        panel_count += 1
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))

    result = float(total) if np.ndim(total) == 0 else np.asarray(total)
    if exhausted:
        raise AccuracyError(
            f"quadrature tolerance {tol:g} not reached with {max_panels} panels",
            best_estimate=result,
            context={'error_estimate': error_estimate, 'interval': (a, b)}
        )
    logger.debug(f"integrate on [{a:g}, {b:g}]: {panel_count} panels")
    return result


def sign_changes(g: Callable[[float], float], a: float, b: float, scan_points: int = 1024,
                 xtol: float = 1e-15) -> List[float]:
    """Zeros of g on (a, b) located by a uniform scan and bracketing."""
    x = np.linspace(a, b, scan_points + 1)
    vals = np.asarray(g(x), dtype=float) * np.ones_like(x)
    roots: List[float] = [float(x[i]) for i in range(1, scan_points) if vals[i] == 0.0]

    def scalar(s: float) -> float:
        return float(np.asarray(g(np.array([s])), dtype=float).ravel()[0])

    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        roots.append(float(brentq(scalar, x[i], x[i + 1], xtol=xtol)))
    return sorted(roots)


def integrate_abs(g: Integrand, a: float, b: float, tol: float = 1e-10, scan_points: int = 1024,
                  max_panels: int = 20000) -> float:
    """
    ∫_a^b |g(t)| dt with the kinks of |g| used as panel edges.

    Zeros are found by scan and bisection first, so every panel integrates a
    smooth function.
    """
    roots = sign_changes(g, a, b, scan_points)
    return float(integrate(lambda t: np.abs(np.asarray(g(t), dtype=float)), a, b, tol,
                           max_panels=max_panels, breakpoints=roots))
