"""Grids, discrete norms, orthogonal-polynomial recurrences, and Gauss-Legendre quadrature."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericalError",
    "EquispacedGrid",
    "QuadratureRule",
    "equispaced_grid",
    "legendre_eval",
    "legendre_deriv_eval",
    "chebyshev_eval",
    "gauss_legendre",
    "discrete_norms",
]


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


@dataclass(frozen=True)
class EquispacedGrid:
    """The m+1 equispaced nodes x_i = (2i - m)/m on [-1, 1], endpoints included."""

    m: int
    nodes: np.ndarray


def equispaced_grid(m: int) -> EquispacedGrid:
    """Build the equispaced grid with m+1 nodes on [-1, 1].

    The symmetrized formula (2i - m)/m makes the endpoints exactly +-1 and the
    grid exactly sign-symmetric in floating point.
    """
    if m < 1:
        raise ValueError(f"grid parameter m must be >= 1, got {m}")
    i = np.arange(m + 1, dtype=float)
    return EquispacedGrid(m=m, nodes=(2.0 * i - m) / m)


def legendre_eval(n: int, x) -> np.ndarray:
    """Values P_0(x)..P_n(x) of the Legendre polynomials, normalized so P_i(1) = 1.

    Three-term recurrence (i+1) P_{i+1} = (2i+1) x P_i - i P_{i-1}, valid for
    any real x.  Returns an array of shape (n+1,) + shape(x).
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = x
    for i in range(1, n):
        out[i + 1] = ((2 * i + 1) * x * out[i] - i * out[i - 1]) / (i + 1)
    return out


def legendre_deriv_eval(n: int, k: int, x) -> np.ndarray:
    """k-th derivatives P_0^(k)(x)..P_n^(k)(x) of the Legendre polynomials.

    Differentiating the three-term recurrence k times gives
        (i+1) P_{i+1}^(k) = (2i+1) (x P_i^(k) + k P_i^(k-1)) - i P_{i-1}^(k),
    which is iterated over derivative orders.  Entries with k > i are exact zeros.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    x = np.asarray(x, dtype=float)
    prev = legendre_eval(n, x)
    for order in range(1, k + 1):
        cur = np.zeros_like(prev)
        if n >= 1:
            cur[1] = 1.0 if order == 1 else 0.0
        for i in range(1, n):
            cur[i + 1] = ((2 * i + 1) * (x * cur[i] + order * prev[i]) - i * cur[i - 1]) / (i + 1)
        prev = cur
    return prev


def chebyshev_eval(n: int, x) -> np.ndarray:
    """Values T_0(x)..T_n(x) via T_{i+1} = 2x T_i - T_{i-1}."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = x
    for i in range(1, n):
        out[i + 1] = 2.0 * x * out[i] - out[i - 1]
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights for integration over (a, b)."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def integrate(self, f) -> float | complex:
        """Apply the rule to a callable or to values tabulated on the nodes."""
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return np.sum(self.weights * vals)


def _legendre_newton_pair(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # P_n(x) and P_n'(x) for interior x, keeping only the last two recurrence terms.
    p_prev = np.ones_like(x)
    p = x.copy()
    for i in range(1, n):
        p_prev, p = p, ((2 * i + 1) * x * p - i * p_prev) / (i + 1)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(count: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Legendre rule with `count` nodes on (a, b).

    Roots of P_count are found by Newton iteration started from the classical
    Chebyshev-angle guesses; weights are 2 / ((1-x^2) P_count'(x)^2) scaled to
    the target interval.
    """
    if count < 1:
        raise ValueError("node count must be >= 1")
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b})")
    j = np.arange(count, dtype=float)
    x = np.cos(np.pi * (j + 0.75) / (count + 0.5))
    for _ in range(100):
        p, dp = _legendre_newton_pair(count, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise NumericalError(f"Gauss-Legendre Newton iteration stalled for count={count}")
    _, dp = _legendre_newton_pair(count, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # initial guesses are in descending order; flip to ascending nodes
    x, w = x[::-1].copy(), w[::-1].copy()
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=0.5 * (a + b) + half * x, weights=half * w, interval=(a, b))


def discrete_norms(values) -> tuple[float, float]:
    """(sup, l2) semi-norms of values on an equispaced grid.

    sup is the max modulus; l2 uses the weight 2/(m+1), so that
    sqrt(2/(m+1)) * sup <= l2 <= sqrt(2) * sup.
    """
    v = np.asarray(values)
    if v.size == 0:
        raise ValueError("empty value vector")
    a = np.abs(v)
    sup = float(a.max())
    l2 = float(np.sqrt((2.0 / v.size) * np.sum(a * a)))
    return sup, l2
