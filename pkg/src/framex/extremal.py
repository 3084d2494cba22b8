"""Extremal polynomial quantities and inequality checkers.

Brute-force oracles for how large a polynomial bounded at equispaced nodes
(and optionally on an extended interval) can get, the Schaeffer-Duffin
derivative envelope, a randomized pointwise Markov-inequality checker, a
Chebyshev-node best-approximation bound checker, and Chebyshev truncation
with coefficient-decay estimation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .numerics import chebyshev_eval, equispaced_grid, legendre_deriv_eval, legendre_eval

__all__ = [
    "ExtremalResult",
    "MarkovReport",
    "BestApproxReport",
    "ChebyshevExpansion",
    "bmn_oracle",
    "cmn_lower_bound",
    "schaeffer_duffin",
    "markov_check",
    "lemma_t_check",
    "chebyshev_truncation",
    "fit_decay_rate",
]

_NODE_TOL = 1e-10    # feasibility slack at grid nodes
_BMN_MAX_M = 12      # subset enumeration is exponential; desk scale only
_BMN_MAX_N = 6


@dataclass(frozen=True)
class ExtremalResult:
    """An extremal sup together with the polynomial attaining (or approaching) it.

    witness_coeffs are Legendre-basis coefficients on [-1, 1]; witness_x is the
    location of the maximum on the probe grid.
    """

    value: float
    witness_coeffs: np.ndarray
    witness_x: float

    def witness_eval(self, x) -> np.ndarray:
        table = legendre_eval(len(self.witness_coeffs) - 1, x)
        return np.tensordot(self.witness_coeffs, table, axes=(0, 0))


def _lagrange_matrix(xs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Lagrange basis of the nodes xs evaluated at t, shape (len(xs), len(t))."""
    k = len(xs)
    out = np.empty((k, len(t)))
    for i in range(k):
        num = np.ones_like(t)
        den = 1.0
        for j in range(k):
            if j != i:
                num *= t - xs[j]
                den *= xs[i] - xs[j]
        out[i] = num / den
    return out


def bmn_oracle(m: int, n: int, probe_grid_size: int = 4001) -> ExtremalResult:
    """Largest sup on [-1, 1] of a degree-n polynomial bounded by one at the m+1 nodes.

    For a fixed probe point the maximizer is a vertex of the constraint
    polytope, i.e. a polynomial interpolating +-1 on some (n+1)-subset of the
    nodes.  All subsets and sign patterns are enumerated, infeasible vertices
    discarded, and |p| maximized over a probe grid.
    """
    if not 0 <= n <= m:
        raise ValueError("need 0 <= n <= m")
    if m > _BMN_MAX_M or n > _BMN_MAX_N:
        raise ValueError(
            f"subset enumeration needs m <= {_BMN_MAX_M} and n <= {_BMN_MAX_N} "
            f"(got m={m}, n={n}); use cmn_lower_bound for larger parameters")
    nodes = equispaced_grid(m).nodes
    probes = np.linspace(-1.0, 1.0, probe_grid_size)
    # global sign is free, so pin the first sign to +1
    signs = np.array(list(product((1.0, -1.0), repeat=n)))
    signs = np.hstack([np.ones((signs.shape[0], 1)), signs]) if n >= 1 else np.ones((1, 1))

    best_val = -1.0
    best = None
    for subset in combinations(range(m + 1), n + 1):
        sub = nodes[list(subset)]
        l_nodes = _lagrange_matrix(sub, nodes)
        vals_nodes = signs @ l_nodes
        feasible = np.max(np.abs(vals_nodes), axis=1) <= 1.0 + _NODE_TOL
        if not feasible.any():
            continue
        l_probes = _lagrange_matrix(sub, probes)
        vals = np.abs(signs[feasible] @ l_probes)
        row, col = np.unravel_index(np.argmax(vals), vals.shape)
        if vals[row, col] > best_val:
            best_val = float(vals[row, col])
            best = (sub, signs[feasible][row], probes[col])

    sub, sign_vec, x_star = best
    # recover Legendre coefficients of the winning interpolant
    coeffs = np.linalg.solve(legendre_eval(n, sub).T, sign_vec)
    return ExtremalResult(value=best_val, witness_coeffs=coeffs, witness_x=float(x_star))


def cmn_lower_bound(m: int, n: int, gamma: float, epsilon: float,
                    search_budget: int = 50, seed: int = 0,
                    grid_size: int = 10001) -> ExtremalResult:
    """Certified lower bound on the constrained extremal sup.

    Maximizes |p(x)| on [-1, 1] over degree-n polynomials with |p| <= 1 at the
    m+1 equispaced nodes and |p| <= 1/epsilon on [-gamma, gamma], by coordinate
    ascent on the scale-invariant ratio

        sup_{[-1,1]} |p| / max(sup_nodes |p|, epsilon * sup_{[-gamma,gamma]} |p|)

    from the enumeration witness (when in range) and random starts.  Interval
    sups are measured on fine grids, so the result is a lower bound on the true
    sup; the returned witness is rescaled to satisfy the constraints exactly
    as measured.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    nodes = equispaced_grid(m).nodes
    p_nodes = legendre_eval(n, nodes)
    p_obj = legendre_eval(n, np.linspace(-1.0, 1.0, grid_size))
    p_ext = legendre_eval(n, np.linspace(-gamma, gamma, grid_size))

    def ratio_from(vn, ve, vo):
        den = max(np.max(np.abs(vn)), epsilon * np.max(np.abs(ve)))
        return np.max(np.abs(vo)) / den if den > 0 else 0.0

    starts = []
    e0 = np.zeros(n + 1)
    e0[0] = 1.0
    starts.append(e0)
    if m <= _BMN_MAX_M and n <= _BMN_MAX_N:
        starts.append(bmn_oracle(m, n, probe_grid_size=grid_size).witness_coeffs)
    rng = np.random.default_rng(seed)
    while len(starts) < max(search_budget, 1):
        starts.append(rng.standard_normal(n + 1))

    best_c, best_r = e0, 0.0
    for start in starts:
        c = np.array(start, dtype=float)
        vn, ve, vo = c @ p_nodes, c @ p_ext, c @ p_obj
        cur = ratio_from(vn, ve, vo)
        if cur == 0.0:
            continue
        step = 0.5
        sweeps = 0
        while step > 1e-4 and sweeps < 200:
            sweeps += 1
            improved = False
            for j in range(n + 1):
                for delta in (step, -step):
                    tn = vn + delta * p_nodes[j]
                    te = ve + delta * p_ext[j]
                    to = vo + delta * p_obj[j]
                    r = ratio_from(tn, te, to)
                    if r > cur * (1.0 + 1e-12):
                        c[j] += delta
                        vn, ve, vo, cur = tn, te, to, r
                        improved = True
            if not improved:
                step *= 0.5
        # re-evaluate from the coefficients to drop incremental rounding
        vn, ve, vo = c @ p_nodes, c @ p_ext, c @ p_obj
        cur = ratio_from(vn, ve, vo)
        if cur > best_r:
            best_r, best_c = cur, c.copy()

    vn, ve, vo = best_c @ p_nodes, best_c @ p_ext, best_c @ p_obj
    scale = max(np.max(np.abs(vn)), epsilon * np.max(np.abs(ve)))
    best_c = best_c / scale
    vo = vo / scale
    idx = int(np.argmax(np.abs(vo)))
    x_star = np.linspace(-1.0, 1.0, grid_size)[idx]
    return ExtremalResult(value=float(np.abs(vo[idx])), witness_coeffs=best_c,
                          witness_x=float(x_star))


def _double_factorial_sq(m: int) -> int:
    # ((2m-1)!!)^2 with (-1)!! = 1
    out = 1
    for t in range(1, 2 * m, 2):
        out *= t
    return out * out


def _b_coefficient(m: int, k: int, n: int) -> int:
    # c_{m,k} * (n^2 - (m+1)^2) ... (n^2 - (k-1)^2), empty product = 1; exact integer
    c = 1 if m == 0 else math.comb(k - 1 + m, 2 * m) * _double_factorial_sq(m)
    prod = 1
    for s in range(m + 1, k):
        prod *= n * n - s * s
    return c * prod


def schaeffer_duffin(n: int, k: int, x: float) -> float:
    """Pointwise envelope D_{n,k}(x) for the k-th derivative of polynomials bounded by one.

    D^2 = n^2 * sum_{m=0}^{k-1} b_{m,n} / (1 - x^2)^{k+m}.  Coefficients are
    exact integers; for large n the terms are summed in the log domain to
    dodge overflow.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if not abs(x) < 1.0:
        raise ValueError("need |x| < 1")
    one_minus = 1.0 - x * x
    bs = [_b_coefficient(m, k, n) for m in range(k)]
    if all(b.bit_length() < 900 for b in bs):
        total = math.fsum(float(bs[m]) / one_minus ** (k + m) for m in range(k))
        return n * math.sqrt(total)
    logs = [math.log(bs[m]) - (k + m) * math.log(one_minus) for m in range(k)]
    top = max(logs)
    total = math.fsum(math.exp(l - top) for l in logs)
    return n * math.exp(0.5 * (top + math.log(total)))


@dataclass(frozen=True)
class MarkovReport:
    """Outcome of a randomized pointwise Markov-inequality check."""

    n: int
    k: int
    delta: float
    trials: int
    max_ratio_markov: float     # |p^(k)(x)| vs 1.251 n^k (1-x^2)^{-k/2}
    max_ratio_envelope: float   # |p^(k)(x)| vs D_{n,k}(x)
    max_ratio_dominance: float  # D_{n,k}(x) vs 1.251 n^k (1-x^2)^{-k/2}
    violations: int


def markov_check(n: int, k: int, delta: float, trials: int, seed: int = 0,
                 norm_grid: int = 10001) -> MarkovReport:
    """Probe the pointwise Markov bound 1.251 n^k (1-x^2)^{-k/2} on random polynomials.

    Draws random Legendre coefficients, normalizes each polynomial by its
    fine-grid sup on [-1, 1], and checks at a random |x| <= delta that the
    k-th derivative obeys both the Markov bound and the sharper
    Schaeffer-Duffin envelope, and that the envelope itself is dominated.
    Requires the hypothesis k < n sqrt((1 - delta^2)/2).
    """
    if not 0 < delta < 1:
        raise ValueError("need 0 < delta < 1")
    if not k < n * math.sqrt((1.0 - delta * delta) / 2.0):
        raise ValueError(
            f"hypothesis k < n sqrt((1-delta^2)/2) fails for n={n}, k={k}, delta={delta}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((trials, n + 1))
    xs = rng.uniform(-delta, delta, trials)

    table = legendre_eval(n, np.linspace(-1.0, 1.0, norm_grid))
    sups = np.max(np.abs(coeffs @ table), axis=1)
    deriv_table = legendre_deriv_eval(n, k, xs)          # (n+1, trials)
    derivs = np.abs(np.einsum("ti,it->t", coeffs, deriv_table)) / sups

    markov_bound = 1.251 * float(n) ** k / (1.0 - xs * xs) ** (k / 2.0)
    envelope = np.array([schaeffer_duffin(n, k, x) for x in xs])

    slack = 1.0 + 1e-9
    violations = int(np.sum(derivs > markov_bound * slack)
                     + np.sum(derivs > envelope * slack)
                     + np.sum(envelope > markov_bound * slack))
    return MarkovReport(
        n=n, k=k, delta=delta, trials=trials,
        max_ratio_markov=float(np.max(derivs / markov_bound)),
        max_ratio_envelope=float(np.max(derivs / envelope)),
        max_ratio_dominance=float(np.max(envelope / markov_bound)),
        violations=violations,
    )


@dataclass(frozen=True)
class BestApproxReport:
    """Measured Chebyshev-node interpolation error against the factorial bound."""

    r: int
    interval: tuple[float, float]
    measured: float
    bound: float
    passed: bool


def _barycentric_weights(xs: np.ndarray) -> np.ndarray:
    w = np.empty(len(xs))
    for j in range(len(xs)):
        w[j] = 1.0 / np.prod(xs[j] - np.delete(xs, j))
    return w


def _barycentric_eval(xs, w, fvals, t):
    diff = t[:, None] - xs[None, :]
    exact = np.isclose(diff, 0.0, atol=0.0)
    diff = np.where(exact, 1.0, diff)
    num = (w / diff) @ fvals
    den = (w / diff).sum(axis=1)
    out = num / den
    hit_row, hit_col = np.nonzero(exact)
    out[hit_row] = fvals[hit_col]
    return out


def lemma_t_check(f, a: float, b: float, r: int, grid_size: int = 20001) -> BestApproxReport:
    """Check E_{r-1}(f) <= (2/r!) ((b-a)/4)^r sup|f^(r)| via Chebyshev-node interpolation.

    Builds the degree-(r-1) interpolant of f at the r Chebyshev zeros mapped to
    [a, b] (the node set minimizing the node polynomial) and measures its sup
    error on a fine grid.  That interpolant realizes the bound, so the measured
    error is asserted to stay below twice the bound.

    f needs a ``deriv(order, x)`` callable for the r-th derivative.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    deriv = getattr(f, "deriv", None)
    if deriv is None:
        raise ValueError("f must provide a deriv(order, x) callable")
    feval = getattr(f, "eval", f)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    j = np.arange(r)
    xs = mid + half * np.cos((2 * j + 1) * np.pi / (2 * r))
    w = _barycentric_weights(xs)
    fvals = np.asarray(feval(xs), dtype=float)

    t = np.linspace(a, b, grid_size)
    measured = float(np.max(np.abs(_barycentric_eval(xs, w, fvals, t) - feval(t))))
    deriv_sup = float(np.max(np.abs(deriv(r, t))))
    bound = (2.0 / math.factorial(r)) * ((b - a) / 4.0) ** r * deriv_sup
    return BestApproxReport(r=r, interval=(a, b), measured=measured, bound=bound,
                            passed=measured <= 2.0 * bound + 1e-300)


@dataclass(frozen=True)
class ChebyshevExpansion:
    """Truncated Chebyshev expansion plus the empirical decay rate of |c_k|."""

    coeffs: np.ndarray
    decay_rate: float | None

    def evaluate(self, x) -> np.ndarray:
        table = chebyshev_eval(len(self.coeffs) - 1, x)
        return np.tensordot(self.coeffs, table, axes=(0, 0))


def fit_decay_rate(coeffs: np.ndarray, k_min: int, k_max: int) -> float | None:
    """Per-step geometric decay of |c_k| over k in [k_min, k_max], by log-linear fit.

    Near-zero coefficients (such as odd ones for an even function) are skipped.
    Returns None when fewer than three usable coefficients remain.
    """
    mags = np.abs(np.asarray(coeffs))
    floor = mags.max() * 1e-13
    ks = [k for k in range(k_min, min(k_max, len(mags) - 1) + 1) if mags[k] > floor]
    if len(ks) < 3:
        return None
    slope = np.polyfit(np.array(ks, dtype=float), np.log(mags[ks]), 1)[0]
    return float(math.exp(slope))


def chebyshev_truncation(f, n: int, quad_size: int | None = None) -> ChebyshevExpansion:
    """Chebyshev coefficients c_0..c_n of f by Gauss-Chebyshev (cosine) sampling.

    quad_size defaults to max(4n, 64); accuracy of the computed coefficients
    improves spectrally with quad_size for smooth f.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    q = quad_size if quad_size is not None else max(4 * n, 64)
    if q < n + 1:
        raise ValueError("quad_size must be at least n + 1")
    feval = getattr(f, "eval", f)
    theta = (np.arange(q) + 0.5) * np.pi / q
    fv = np.asarray(feval(np.cos(theta)))
    ks = np.arange(n + 1)
    cosines = np.cos(np.outer(ks, theta))
    coeffs = (2.0 / q) * (cosines @ fv)
    coeffs[0] *= 0.5
    if not np.iscomplexobj(fv):
        coeffs = coeffs.real
    usable = len(coeffs) - 1
    return ChebyshevExpansion(coeffs=coeffs, decay_rate=fit_decay_rate(coeffs, 2, usable))
