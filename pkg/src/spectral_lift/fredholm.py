"""Finite truncations of Fredholm modules and their validation.

A module packages a symmetry F (F = F*, F^2 = I), a family of unitary
generators representing a discrete group, and an interior index mask marking
the rows/columns free of wrap-around truncation artifacts.  Two canonical
examples ship: the circle Hilbert-transform model over Z and a two-torus
spinor model over Z^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AxiomViolationError, DegenerateModuleError, InsufficientDataError
from .groups import FreeAbelianGroup, Group
from .operators import (
    DecayFit,
    commutator,
    fit_decay,
    mask_operator,
    op_norm,
    singular_values,
)

AXIOM_TOL = 1e-10

SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)


@dataclass
class FredholmModule:
    dim: int
    F: np.ndarray
    unitaries: dict[str, np.ndarray]
    group: Group
    interior_mask: np.ndarray  # indices untouched by wrap-around artifacts
    metadata: dict = field(default_factory=dict)

    @property
    def generator_labels(self) -> tuple[str, ...]:
        return self.group.spec.generator_labels

    def generator_list(self) -> list[np.ndarray]:
        return [self.unitaries[lab] for lab in self.generator_labels]

    def masked_commutator(self, label: str) -> np.ndarray:
        """[F, u] with wrap-affected rows and columns zeroed."""
        return mask_operator(commutator(self.F, self.unitaries[label]), self.interior_mask)

    def generator_permutations(self) -> list[np.ndarray | None]:
        """Permutation index arrays (u e_k = e_p[k]) where generators allow it."""
        return [permutation_index(u) for u in self.generator_list()]


def permutation_index(u: np.ndarray) -> np.ndarray | None:
    """Return p with u e_k = e_p[k] if u is an exact 0/1 permutation matrix."""
    n = u.shape[0]
    rows, cols = np.nonzero(u)
    if rows.size != n:
        return None
    if not np.all(u[rows, cols] == 1.0):
        return None
    p = np.empty(n, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    for r, c in zip(rows, cols):
        if seen[c]:
            return None
        seen[c] = True
        p[c] = r
    return p if seen.all() else None


def build_circle_module(n_modes: int) -> FredholmModule:
    """Hilbert-transform model on Fourier modes -N..N over the group Z.

    F is the sign of the mode index (sign(0) = +1) and the generator is the
    cyclic shift by one mode.  The wrap column N -> -N is excluded from the
    interior mask.
    """
    if n_modes < 2:
        raise ValueError("need n_modes >= 2")
    n = n_modes
    dim = 2 * n + 1
    modes = np.arange(-n, n + 1)
    fdiag = np.where(modes >= 0, 1.0, -1.0)
    f_op = np.diag(fdiag).astype(complex)
    u = np.zeros((dim, dim), dtype=complex)
    for m in modes:
        target = m + 1 if m < n else -n
        u[target + n, m + n] = 1.0
    interior = np.nonzero(np.abs(modes) <= n - 1)[0]
    group = FreeAbelianGroup(1)
    meta = {"builder": "circle", "n_modes": n, "averaging_radius": n}
    return FredholmModule(dim, f_op, {"u": u}, group, interior, meta)


def build_torus_module(rank: int, n_modes: int) -> FredholmModule:
    """Spinor model on the momentum lattice [-N, N]^rank over Z^rank.

    rank 1 reduces to the circle model.  For rank 2 the symmetry at momentum
    n is (n1 s1 + n2 s2)/|n| in the standard Hermitian involutive pair, with
    s1 at the kernel momentum, and the generators are the two lattice shifts
    acting trivially on the spinor index.
    """
    if rank not in (1, 2):
        raise ValueError("rank must be 1 or 2")
    if n_modes < 2:
        raise ValueError("need n_modes >= 2")
    if rank == 1:
        return build_circle_module(n_modes)
    n = n_modes
    width = 2 * n + 1
    sites = width * width
    dim = 2 * sites

    def site_index(n1, n2):
        return (n1 + n) * width + (n2 + n)

    f_op = np.zeros((dim, dim), dtype=complex)
    for n1 in range(-n, n + 1):
        for n2 in range(-n, n + 1):
            s = site_index(n1, n2)
            if n1 == 0 and n2 == 0:
                block = SIGMA_1
            else:
                block = (n1 * SIGMA_1 + n2 * SIGMA_2) / np.hypot(n1, n2)
            f_op[2 * s : 2 * s + 2, 2 * s : 2 * s + 2] = block

    def shift_matrix(axis):
        u = np.zeros((dim, dim), dtype=complex)
        for n1 in range(-n, n + 1):
            for n2 in range(-n, n + 1):
                if axis == 0:
                    t1, t2 = (n1 + 1 if n1 < n else -n), n2
                else:
                    t1, t2 = n1, (n2 + 1 if n2 < n else -n)
                src, dst = site_index(n1, n2), site_index(t1, t2)
                u[2 * dst, 2 * src] = 1.0
                u[2 * dst + 1, 2 * src + 1] = 1.0
        return u

    interior_sites = [
        site_index(n1, n2)
        for n1 in range(-(n - 1), n)
        for n2 in range(-(n - 1), n)
    ]
    interior = np.sort(
        np.concatenate([[2 * s, 2 * s + 1] for s in interior_sites])
    )
    group = FreeAbelianGroup(2)
    meta = {"builder": "torus2", "n_modes": n, "averaging_radius": 12}
    return FredholmModule(
        dim, f_op, {"u1": shift_matrix(0), "u2": shift_matrix(1)}, group, interior, meta
    )


def validate_axioms(module: FredholmModule, tol: float = AXIOM_TOL) -> dict[str, float]:
    """Residuals of the structural axioms; reporting only, never raises."""
    f_op = module.F
    eye = np.eye(module.dim)
    report = {
        "F_selfadjoint": op_norm(f_op - f_op.conj().T),
        "F_squared": op_norm(f_op @ f_op - eye),
    }
    labels = module.generator_labels
    for lab in labels:
        u = module.unitaries[lab]
        report[f"unitary_{lab}"] = max(
            op_norm(u.conj().T @ u - eye), op_norm(u @ u.conj().T - eye)
        )
    if module.group.spec.kind == "free-abelian":
        for i, la in enumerate(labels):
            for lb in labels[i + 1 :]:
                report[f"commuting_{la}_{lb}"] = op_norm(
                    commutator(module.unitaries[la], module.unitaries[lb])
                )
    elif module.group.spec.kind == "cyclic":
        u = module.unitaries[labels[0]]
        report["cyclic_relation"] = op_norm(
            np.linalg.matrix_power(u, module.group.spec.order) - eye
        )
    report["max"] = max(report.values()) if report else 0.0
    return report


def require_valid(module: FredholmModule, tol: float = AXIOM_TOL):
    """Hard validation: raises naming the worst residual."""
    report = validate_axioms(module, tol)
    for name, residual in report.items():
        if name != "max" and residual > tol:
            raise AxiomViolationError(f"axiom {name} violated: residual {residual:.3e}")
    return report


@dataclass
class SummabilityReport:
    fits: dict[str, DecayFit | None]
    weak_stats: dict[str, float]
    declared_p: float


def summability_report(module: FredholmModule, zero_tol: float | None = None) -> SummabilityReport:
    """Decay statistics of the masked generator commutators.

    declared_p is the largest implied summability order across generators,
    clamped below at 1.0.  A module whose commutators all vanish carries no
    metric information and is rejected.
    """
    fits: dict[str, DecayFit | None] = {}
    weak_stats: dict[str, float] = {}
    mus = {}
    any_nonzero = False
    for lab in module.generator_labels:
        mu = singular_values(module.masked_commutator(lab))
        mus[lab] = mu
        if mu.size and mu[0] > 1e-12:
            any_nonzero = True
    if not any_nonzero:
        raise DegenerateModuleError("all generator commutators vanish")
    implied = []
    for lab, mu in mus.items():
        try:
            fit = fit_decay(mu, zero_tol)
            implied.append(fit.implied_order)
        except InsufficientDataError:
            fit = None  # rank-deficient commutator: no asymptotic regime to fit
        fits[lab] = fit
    declared_p = max([1.0] + implied)
    for lab, mu in mus.items():
        ranks = np.arange(1, mu.size + 1, dtype=float)
        weak_stats[lab] = float(np.max(ranks ** (1.0 / declared_p) * mu))
    return SummabilityReport(fits, weak_stats, declared_p)
