"""Least-squares approximation on [-1, 1] in a scaled Legendre frame.

The frame functions psi_i(x) = sqrt(i + 1/2) P_i(x / gamma) / sqrt(gamma) are
orthonormal on the extended interval [-gamma, gamma].  Fitting equispaced
samples by a truncated-SVD least squares in this frame gives approximations
that stay accurate and well conditioned under linear oversampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import NumericalError, EquispacedGrid, equispaced_grid, gauss_legendre, legendre_eval

__all__ = [
    "FrameSpec",
    "SvdFactors",
    "RegularizedFit",
    "SingularPolynomials",
    "frame_row",
    "frame_matrix",
    "assemble",
    "svd",
    "fit",
    "evaluate",
    "errors_on_fine_grid",
    "condition_numbers",
    "condition_number_l2",
    "singular_polynomials",
    "scaling_m_of_n",
    "epsilon_prime",
]

# singular values below this are flushed to zero so reciprocals stay finite
_SIGMA_FLOOR = 1e-300

_POWER_SEED = 1729  # deterministic start vector for the spectral-norm iteration


@dataclass(frozen=True)
class FrameSpec:
    """Extension parameter gamma >= 1 and maximal degree n >= 0.

    gamma == 1 reduces to the ordinary orthonormal Legendre basis on [-1, 1].
    """

    gamma: float
    n: int

    def __post_init__(self):
        if not self.gamma >= 1.0:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")
        if self.n < 0:
            raise ValueError(f"degree must be >= 0, got {self.n}")


def _frame_scale(spec: FrameSpec) -> np.ndarray:
    return np.sqrt((np.arange(spec.n + 1) + 0.5) / spec.gamma)


def frame_row(spec: FrameSpec, x: float) -> np.ndarray:
    """Values psi_0(x)..psi_n(x) at a single point."""
    return legendre_eval(spec.n, np.float64(x) / spec.gamma) * _frame_scale(spec)


def frame_matrix(spec: FrameSpec, points) -> np.ndarray:
    """Matrix of frame values, shape (len(points), n+1)."""
    x = np.asarray(points, dtype=float)
    table = legendre_eval(spec.n, x / spec.gamma)
    return (table * _frame_scale(spec)[:, None]).T


def assemble(spec: FrameSpec, m: int) -> tuple[np.ndarray, EquispacedGrid]:
    """Normalized least-squares matrix A[i, j] = sqrt(2/(m+1)) psi_j(x_i)."""
    grid = equispaced_grid(m)
    return math.sqrt(2.0 / (m + 1)) * frame_matrix(spec, grid.nodes), grid


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD A = U diag(sigma) V^T with sigma sorted nonincreasing."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray


def svd(a) -> SvdFactors:
    """Thin SVD of a real matrix with rows >= columns.

    Backed by LAPACK; singular values below 1e-300 are flushed to zero (the
    frame Gram is exponentially ill conditioned, so trailing sigma can underflow).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < a.shape[1]:
        raise ValueError(f"need a tall matrix (rows >= columns), got shape {a.shape}")
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge for shape {a.shape}") from exc
    s = np.where(s < _SIGMA_FLOOR, 0.0, s)
    return SvdFactors(u=u, sigma=s, v=vt.T)


@dataclass(frozen=True)
class RegularizedFit:
    """Truncated-SVD least-squares fit of equispaced samples.

    kept holds the indices with sigma_i > epsilon (strict); coeffs is the
    complex coefficient vector of the approximant in the frame basis.
    """

    spec: FrameSpec
    m: int
    epsilon: float
    svd: SvdFactors
    kept: np.ndarray
    coeffs: np.ndarray
    grid: EquispacedGrid = field(repr=False)


def fit(spec: FrameSpec, m: int, epsilon: float, samples) -> RegularizedFit:
    """Fit m+1 equispaced samples, zeroing singular values sigma_i <= epsilon.

    The right-hand side is b = sqrt(2/(m+1)) * samples and the coefficients are
    V Sigma_eps^+ U^T b.  Samples may be complex; the factors are real.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    samples = np.asarray(samples)
    if samples.shape != (m + 1,):
        raise ValueError(f"expected {m + 1} samples, got shape {samples.shape}")
    a, grid = assemble(spec, m)
    factors = svd(a)
    kept = np.flatnonzero(factors.sigma > epsilon)
    b = math.sqrt(2.0 / (m + 1)) * samples.astype(complex)
    inv = np.zeros_like(factors.sigma)
    inv[kept] = 1.0 / factors.sigma[kept]
    coeffs = factors.v @ (inv * (factors.u.T @ b))
    return RegularizedFit(spec=spec, m=m, epsilon=float(epsilon), svd=factors,
                          kept=kept, coeffs=coeffs, grid=grid)


def _frame_series(spec: FrameSpec, coeffs: np.ndarray, points) -> np.ndarray:
    # sum_i coeffs[i] psi_i(points), accumulated degree by degree so only two
    # recurrence vectors are alive (evaluation grids can hold 50k+ points)
    x = np.asarray(points, dtype=float)
    t = x / spec.gamma
    c = np.asarray(coeffs)
    acc = np.zeros(t.shape, dtype=np.promote_types(c.dtype, np.float64))
    p_prev = np.ones_like(t)
    acc += c[0] * math.sqrt(0.5 / spec.gamma) * p_prev
    if spec.n >= 1:
        p = t.copy()
        acc += c[1] * math.sqrt(1.5 / spec.gamma) * p
        for i in range(1, spec.n):
            p_prev, p = p, ((2 * i + 1) * t * p - i * p_prev) / (i + 1)
            acc += c[i + 1] * math.sqrt((i + 1.5) / spec.gamma) * p
    return acc


def evaluate(rfit: RegularizedFit, points) -> np.ndarray:
    """Evaluate the fitted approximant at the given points (complex values)."""
    return _frame_series(rfit.spec, rfit.coeffs, points)


def errors_on_fine_grid(rfit: RegularizedFit, f, grid_size: int = 50000) -> tuple[float, float]:
    """(sup, l2) error of the approximant against f on a fine equispaced grid.

    f may be a callable or anything with an ``eval`` attribute.  The l2 error
    uses the weight 2/grid_size.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    feval = getattr(f, "eval", f)
    xs = np.linspace(-1.0, 1.0, grid_size)
    diff = np.abs(evaluate(rfit, xs) - feval(xs))
    err_inf = float(diff.max())
    err_l2 = math.sqrt((2.0 / grid_size) * float(np.sum(diff * diff)))
    return err_inf, err_l2


def _scaled_modes(spec: FrameSpec, m: int, epsilon: float, grid_size: int):
    """K = E V_kept / sigma_kept on the fine grid, plus U restricted to kept."""
    a, _ = assemble(spec, m)
    factors = svd(a)
    kept = np.flatnonzero(factors.sigma > epsilon)
    if kept.size == 0:
        return None, None
    xs = np.linspace(-1.0, 1.0, grid_size)
    e = frame_matrix(spec, xs)
    k = (e @ factors.v[:, kept]) / factors.sigma[kept]
    return k, factors.u[:, kept]


def _power_iteration_largest(w: np.ndarray, tol: float = 1e-8, max_iter: int = 5000,
                             seed: int = _POWER_SEED) -> float:
    """Largest eigenvalue of a symmetric PSD matrix by power iteration.

    Convergence is geometric at the square of the eigenvalue ratio, so the
    remaining error is estimated from the trend of the Rayleigh increments
    (plain increment thresholds under-report the error when the top of the
    spectrum is clustered, which it typically is here by parity symmetry).
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(w.shape[0])
    v /= np.linalg.norm(v)
    lam = None
    delta_prev = None
    for _ in range(max_iter):
        y = w @ v
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0
        v = y / ny
        lam_new = float(v @ (w @ v))
        if lam is not None:
            delta = abs(lam_new - lam)
            if delta <= 1e-300 * max(abs(lam_new), 1.0):
                return lam_new
            if delta_prev is not None and delta < delta_prev:
                ratio = delta / delta_prev
                tail = delta * ratio / (1.0 - ratio)
                if tail <= tol * abs(lam_new):
                    return lam_new
            delta_prev = delta
        lam = lam_new
    raise NumericalError("power iteration for the spectral norm stagnated")


def condition_numbers(spec: FrameSpec, m: int, epsilon: float,
                      fine_grid_size: int = 50000) -> tuple[float, float]:
    """(cond_2, cond_inf) of the sample-to-approximant map, discretized on a fine grid.

    With E the fine-grid frame matrix and M = E V Sigma_eps^+ U^T,
    cond_inf = sqrt(2/(m+1)) * max_j sum_k |M[j, k]| is the exact operator norm
    from discrete-sup sample perturbations to the sup of the approximant on the
    grid (a lower bound on the continuum value), and
    cond_2 = sqrt(2/fine_grid_size) * ||M||_2 is the discrete-L2 condition
    number, with the spectral norm from power iteration (tolerance 1e-8).
    """
    k, u = _scaled_modes(spec, m, epsilon, fine_grid_size)
    if k is None:
        return 0.0, 0.0
    lam = _power_iteration_largest(k.T @ k)
    cond_2 = math.sqrt(2.0 / fine_grid_size) * math.sqrt(max(lam, 0.0))
    # row-wise 1-norms of M = K U^T, in column blocks to bound memory
    row_sums = np.zeros(k.shape[0])
    chunk = max(1, (1 << 22) // max(k.shape[0], 1))
    for lo in range(0, u.shape[0], chunk):
        row_sums += np.abs(k @ u[lo:lo + chunk].T).sum(axis=1)
    cond_inf = math.sqrt(2.0 / (m + 1)) * float(row_sums.max())
    return cond_2, cond_inf


def condition_number_l2(spec: FrameSpec, m: int, epsilon: float,
                        fine_grid_size: int = 50000) -> float:
    """Just the discrete-L2 condition number (cheap path for stability searches)."""
    k, _ = _scaled_modes(spec, m, epsilon, fine_grid_size)
    if k is None:
        return 0.0
    lam = _power_iteration_largest(k.T @ k)
    return math.sqrt(2.0 / fine_grid_size) * math.sqrt(max(lam, 0.0))


@dataclass(frozen=True)
class SingularPolynomials:
    """Polynomials xi_i = sum_j V[j, i] psi_j built from the right singular vectors.

    They are orthonormal on [-gamma, gamma] and orthogonal in the discrete
    inner product on the sample grid, with <xi_j, xi_k>_m = sigma_j^2 delta_jk.
    """

    spec: FrameSpec
    m: int
    svd: SvdFactors

    def evaluate_all(self, points) -> np.ndarray:
        """Matrix of xi values, shape (len(points), n+1)."""
        return frame_matrix(self.spec, points) @ self.svd.v

    def continuous_gram(self, count: int | None = None) -> np.ndarray:
        """Gram matrix over [-gamma, gamma] by Gauss-Legendre quadrature."""
        if count is None:
            count = self.spec.n + 20
        rule = gauss_legendre(count, -self.spec.gamma, self.spec.gamma)
        xi = self.evaluate_all(rule.nodes)
        return (xi * rule.weights[:, None]).T @ xi

    def discrete_gram(self) -> np.ndarray:
        """Gram matrix in the discrete inner product on the sample grid."""
        a, _ = assemble(self.spec, self.m)
        b = a @ self.svd.v
        return b.T @ b


def singular_polynomials(spec: FrameSpec, m: int) -> SingularPolynomials:
    """Construct the singular-vector polynomials for the (spec, m) pair."""
    a, _ = assemble(spec, m)
    return SingularPolynomials(spec=spec, m=m, svd=svd(a))


def scaling_m_of_n(n: int, epsilon: float, gamma: float) -> int:
    """Sample count m = ceil(36 n log(1/eps) / sqrt(gamma^2 - 1)).

    This linear-oversampling rule keeps the truncated fit well conditioned; it
    needs gamma > 1 and 0 < eps <= 1/e.
    """
    if gamma <= 1.0:
        raise ValueError("scaling rule requires gamma > 1")
    if not 0.0 < epsilon <= 1.0 / math.e:
        raise ValueError("scaling rule requires 0 < epsilon <= 1/e")
    return math.ceil(36.0 * n * math.log(1.0 / epsilon) / math.sqrt(gamma * gamma - 1.0))


def epsilon_prime(epsilon: float, n: int, gamma: float) -> float:
    """Degree-adjusted truncation threshold eps * (n+1) / sqrt(gamma)."""
    return epsilon * (n + 1) / math.sqrt(gamma)
