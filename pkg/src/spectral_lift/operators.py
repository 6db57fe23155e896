"""Dense Hermitian matrix engine.

Commutators, spectral decompositions, scalar functional calculus, singular
values, Schatten-type statistics, decay-exponent fits, the resolvent-integral
inverse square root, and tolerance-aware positive-semidefinite ordering.

All operators are dense complex matrices; constructions downstream (functional
calculus, group averaging) destroy sparsity anyway.  Matrices that are exactly
diagonal take a fast path through the functional calculus, which also keeps
exponentially small diagonal entries at full relative precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, DomainBreachError, InsufficientDataError

HERMITICITY_TOL = 1e-10
ZERO_TOL_RELATIVE = 1e-10  # eigenvalues below this times the norm count as zero


def as_complex_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitize(a) -> tuple[np.ndarray, float]:
    """Symmetrize (A + A*)/2 and report the asymmetry that was removed."""
    a = as_complex_matrix(a)
    return 0.5 * (a + a.conj().T), hermiticity_residual(a)


def op_norm(a) -> float:
    """Spectral norm."""
    a = np.asarray(a, dtype=complex)
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def commutator(a, b) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return a @ b - b @ a


def singular_values(t) -> np.ndarray:
    """Singular values in descending order (length = dimension)."""
    t = as_complex_matrix(t)
    return np.linalg.svd(t, compute_uv=False)


def schatten_sum(t, p: float, n_terms: int | None = None) -> float:
    """Partial Schatten power sum over the n_terms largest singular values."""
    if p <= 0:
        raise ValueError("p must be positive")
    mu = singular_values(t)
    if n_terms is None:
        n_terms = mu.size
    if n_terms > mu.size:
        raise DimensionMismatchError("n_terms exceeds dimension")
    return float(np.sum(mu[:n_terms] ** p))


def schatten_norm(t, p: float) -> float:
    return schatten_sum(t, p) ** (1.0 / p)


def weak_schatten_stat(t, p: float) -> float:
    """Finite-dimensional weak-l^p statistic: max over m of (m+1)^(1/p) mu_m."""
    if p <= 0:
        raise ValueError("p must be positive")
    mu = singular_values(t)
    if mu.size == 0:
        return 0.0
    m = np.arange(1, mu.size + 1, dtype=float)
    return float(np.max(m ** (1.0 / p) * mu))


@dataclass
class DecayFit:
    """Power-law fit mu_m ~ C m^(-alpha) over a trimmed index window."""

    window: tuple[int, int]
    fitted_alpha: float
    implied_order: float  # 1/alpha: the summability order the decay implies
    r_squared: float


def fit_decay(values, zero_tol: float | None = None) -> DecayFit:
    """Log-log least squares on a descending sequence of singular values.

    The window [10%, 80%] of the above-threshold count avoids both the
    non-asymptotic head and the truncation-polluted tail.
    """
    mu = np.asarray(values, dtype=float)
    if zero_tol is None:
        zero_tol = ZERO_TOL_RELATIVE * (mu[0] if mu.size else 0.0)
    n_eff = int(np.sum(mu > zero_tol))
    if n_eff < 4:
        raise InsufficientDataError(f"only {n_eff} values above threshold, need >= 4")
    m_lo = int(np.ceil(0.1 * n_eff))
    m_hi = int(np.floor(0.8 * n_eff))
    if m_hi - m_lo + 1 < 4:
        raise InsufficientDataError("fit window holds fewer than 4 points")
    m = np.arange(m_lo, m_hi + 1)
    x = np.log(m.astype(float))
    y = np.log(mu[m])
    slope, intercept = np.polyfit(x, y, 1)
    fitted_alpha = float(-slope)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    implied_order = 1.0 / fitted_alpha if fitted_alpha > 1e-12 else float("inf")
    return DecayFit((m_lo, m_hi), fitted_alpha, implied_order, r_squared)


def _is_exactly_diagonal(a: np.ndarray) -> bool:
    return np.count_nonzero(a - np.diag(np.diagonal(a))) == 0


def hermitian_eigensystem(a) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and unitary eigenvector columns of a Hermitian matrix.

    Exactly diagonal input bypasses LAPACK so that tiny diagonal entries keep
    full relative precision.
    """
    a = as_complex_matrix(a)
    res = hermiticity_residual(a)
    scale = max(op_norm(a), 1.0)
    if res > HERMITICITY_TOL * scale:
        raise ValueError(f"matrix is not Hermitian: residual {res:.3e}")
    if _is_exactly_diagonal(a):
        d = np.diagonal(a).real.copy()
        order = np.argsort(d, kind="stable")
        v = np.zeros_like(a)
        v[order, np.arange(a.shape[0])] = 1.0
        return d[order], v
    w, v = np.linalg.eigh(a)
    return w, v


def apply_scalar_function(a, phi, domain_guard: tuple[float, float] | None = None) -> np.ndarray:
    """Spectral functional calculus V phi(Lambda) V* for Hermitian input.

    ``phi`` must accept NumPy arrays.  If ``domain_guard`` is given, every
    eigenvalue must lie inside the closed interval; the first offender is
    reported otherwise.
    """
    w, v = hermitian_eigensystem(a)
    if domain_guard is not None:
        lo, hi = domain_guard
        bad = w[(w < lo) | (w > hi)]
        if bad.size:
            raise DomainBreachError(
                f"eigenvalue {bad[0]:.17g} outside domain [{lo:.3g}, {hi:.3g}]"
            )
    vals = np.asarray(phi(w), dtype=float)
    if _is_exactly_diagonal(np.asarray(a, dtype=complex)):
        d = np.diagonal(np.asarray(a, dtype=complex)).real
        return np.diag(np.asarray(phi(d), dtype=float)).astype(complex)
    out = (v * vals) @ v.conj().T
    return hermitize(out)[0]


def inverse_sqrt_by_integral(t, quadrature_points: int = 200) -> np.ndarray:
    """T^(-1/2) via the resolvent integral, midpoint rule after a tangent map.

    Evaluates (2c/pi) * integral over (0, pi/2) of
    (c^2 sin^2(theta) I + cos^2(theta) T)^(-1) d(theta), which converges
    exponentially in the point count for positive definite T.  Solves linear
    systems rather than reusing the spectral decomposition, so it is an
    independent route to the same operator.
    """
    t = as_complex_matrix(t)
    w = np.linalg.eigvalsh(t)
    if w[0] <= 0:
        raise DomainBreachError(f"non-positive eigenvalue {w[0]:.3e}; T must be positive definite")
    c = float((w[0] * w[-1]) ** 0.25)  # scale only; the value comes from the solves
    n = t.shape[0]
    m = quadrature_points
    h = (np.pi / 2) / m
    theta = (np.arange(m) + 0.5) * h
    eye = np.eye(n, dtype=complex)
    acc = np.zeros_like(t)
    for s2, c2 in zip(np.sin(theta) ** 2, np.cos(theta) ** 2):
        acc += np.linalg.inv((c * c * s2) * eye + c2 * t)
    return hermitize((2.0 * c / np.pi) * h * acc)[0]


def psd_order_leq(a, b, tol: float = 1e-10) -> tuple[bool, float]:
    """Check A <= B in the positive-semidefinite order, with relative slack.

    Returns (verdict, witness) where the witness is the smallest eigenvalue
    of B - A; the verdict allows it to reach -tol * (1 + |A| + |B|).
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} differ")
    diff = hermitize(b - a)[0]
    witness = float(np.linalg.eigvalsh(diff)[0]) if diff.size else 0.0
    scale = 1.0 + op_norm(a) + op_norm(b)
    return witness >= -tol * scale, witness


def mask_operator(a, interior: np.ndarray) -> np.ndarray:
    """Zero all rows and columns outside the given interior index set."""
    a = as_complex_matrix(a)
    keep = np.zeros(a.shape[0], dtype=bool)
    keep[np.asarray(interior, dtype=int)] = True
    out = a.copy()
    out[~keep, :] = 0.0
    out[:, ~keep] = 0.0
    return out
