"""The lift: quantum metric, group averaging, nonlinear transform, Dirac operator.

Pipeline: build the metric G from weighted generator commutators, push it
through the forward transform f, average over a group ball with exponential
length weights, pull back through f_inv to get the transformed metric, and
assemble |D| from its inverse square root so that D = F |D| commutes suitably
with the symmetry.  Directions on which the averaged metric vanishes are
split off and lifted from a fixed strictly positive replacement metric.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, asdict

import numpy as np

from . import _kernels
from .errors import DegenerateModuleError, DomainBreachError, SpectralLiftError
from .fredholm import FredholmModule, summability_report
from .operators import (
    apply_scalar_function,
    hermitian_eigensystem,
    hermitize,
    op_norm,
)
from .transform import f, f_inv

DEFAULT_BALL_RADIUS = 12


@dataclass
class LiftConfig:
    """Knobs of the lift; None fields are resolved from the module."""

    p: float | None = None  # summability order; default: fitted from the module
    mode: str = "schatten"  # commutator norm flavor: "schatten" or "weak"
    ball_radius: int | None = None  # averaging truncation; default: module hint
    scale_margin: float = 0.1  # headroom kept clear of both domain edges
    epsilon_guard: float = 0.9  # upper end of the forward transform domain
    kernel_tol: float = 0.0  # relative eigenvalue threshold for the kernel split
    g0_exponent: float | None = None  # replacement metric decay; default 6/p

    def __post_init__(self):
        if self.mode not in ("schatten", "weak"):
            raise ValueError("mode must be 'schatten' or 'weak'")
        if not 0.0 < self.scale_margin < 1.0:
            raise ValueError("scale_margin must lie in (0, 1)")
        if not 0.0 < self.epsilon_guard < 1.0:
            raise ValueError("epsilon_guard must lie in (0, 1)")
        if self.ball_radius is not None and self.ball_radius < 1:
            raise ValueError("ball_radius must be >= 1")


@dataclass
class QuantumMetric:
    """The positive metric operator with its construction constants."""

    G: np.ndarray
    coefficients: dict[str, float]
    scale: float  # sigma applied to meet the domain bounds
    p_used: float


@dataclass
class SpectralTriple:
    D: np.ndarray
    absD: np.ndarray
    F: np.ndarray
    P0: np.ndarray  # projector onto the kernel block
    P1: np.ndarray
    theta: np.ndarray  # transformed metric, assembled over both blocks
    provenance: dict = field(default_factory=dict)


def resolve_ball_radius(module: FredholmModule, cfg: LiftConfig) -> int:
    if cfg.ball_radius is not None:
        return cfg.ball_radius
    return int(module.metadata.get("averaging_radius", DEFAULT_BALL_RADIUS))


def resolve_p(module: FredholmModule, cfg: LiftConfig) -> float:
    if cfg.p is not None:
        return cfg.p
    try:
        return summability_report(module).declared_p
    except DegenerateModuleError:
        return 2.0


def _comm_norm(c_op: np.ndarray, p: float, mode: str) -> float:
    from .operators import schatten_norm, weak_schatten_stat

    return schatten_norm(c_op, p) if mode == "schatten" else weak_schatten_stat(c_op, p)


def admissible_scale(norm_g: float, weight_mass: float, cfg: LiftConfig) -> float:
    """Largest sigma <= 1 keeping sigma*G inside both transform domains.

    Requires |sigma G| <= (1 - margin) * epsilon and
    weight_mass * f(|sigma G|) <= 1 - margin, so the averaged forward
    transform stays inside [0, 1) with declared headroom.
    """
    if norm_g <= 0.0:
        return 1.0
    caps = [1.0, (1.0 - cfg.scale_margin) * cfg.epsilon_guard / norm_g]
    budget = (1.0 - cfg.scale_margin) / weight_mass
    if budget < 1.0:
        caps.append(f_inv(budget) / norm_g)
    return min(caps)


def quantum_metric(module: FredholmModule, cfg: LiftConfig | None = None) -> QuantumMetric:
    """Weighted sum of squared masked generator commutators, rescaled.

    The coefficient of generator k is 2^(-k) over the squared commutator
    norm (equality at the admissible bound), in the Schatten or weak flavor
    chosen by the config.  Generators with vanishing commutator drop out.
    """
    cfg = cfg or LiftConfig()
    p = resolve_p(module, cfg)
    n = module.dim
    g_pre = np.zeros((n, n), dtype=complex)
    coeffs: dict[str, float] = {}
    any_term = False
    for k, lab in enumerate(module.generator_labels, start=1):
        c_op = module.masked_commutator(lab)
        norm = _comm_norm(c_op, p, cfg.mode)
        if norm <= 1e-14:
            coeffs[lab] = 0.0
            continue
        ck = 2.0**-k / norm**2
        coeffs[lab] = ck
        g_pre += ck * (c_op.conj().T @ c_op)
        any_term = True
    if not any_term:
        raise DegenerateModuleError("all generator commutators vanish; no metric")
    g_pre = hermitize(g_pre)[0]
    radius = resolve_ball_radius(module, cfg)
    mass = module.group.weight_sum(radius) + module.group.weight_tail_bound(radius)
    sigma = admissible_scale(op_norm(g_pre), mass, cfg)
    return QuantumMetric(sigma * g_pre, coeffs, sigma, p)


# -- averaging ------------------------------------------------------------


def _permutation_conjugators(module: FredholmModule, radius: int):
    """Inverse permutation index rows for every ball element, or None."""
    perms = module.generator_permutations()
    if any(p is None for p in perms):
        return None
    n = module.dim
    elements = module.group.ball(radius)
    powers = []
    for p in perms:
        pow_table = {0: np.arange(n, dtype=np.int64)}
        p_inv = np.argsort(p)
        for a in range(1, radius + 1):
            pow_table[a] = p[pow_table[a - 1]]
            pow_table[-a] = p_inv[pow_table[-(a - 1)]]
        powers.append(pow_table)
    pinv_rows = np.empty((len(elements), n), dtype=np.int64)
    for row, g in enumerate(elements):
        comp = powers[-1][g[-1]]
        for j in range(len(g) - 2, -1, -1):
            comp = powers[j][g[j]][comp]
        inv = np.empty(n, dtype=np.int64)
        inv[comp] = np.arange(n, dtype=np.int64)
        pinv_rows[row] = inv
    return pinv_rows


def _dense_conjugators(unitaries: list[np.ndarray], group, radius: int):
    """Explicit matrices for every ball element (generic fallback)."""
    n = unitaries[0].shape[0]
    powers = []
    for u in unitaries:
        table = {0: np.eye(n, dtype=complex)}
        u_inv = u.conj().T
        for a in range(1, radius + 1):
            table[a] = u @ table[a - 1]
            table[-a] = u_inv @ table[-(a - 1)]
        powers.append(table)
    mats = []
    for g in group.ball(radius):
        m = powers[-1][g[-1]]
        for j in range(len(g) - 2, -1, -1):
            m = powers[j][g[j]] @ m
        mats.append(m)
    return mats


def average(t_op: np.ndarray, module: FredholmModule, radius: int) -> tuple[np.ndarray, float]:
    """Truncated averaging sum of weighted unitary conjugations over a ball.

    Returns the symmetrized average and the tail bound
    (neglected weight mass times the operator norm of the input).  Terms are
    accumulated in the canonical ball order, so results are reproducible.
    """
    t_op = np.ascontiguousarray(t_op, dtype=complex)
    _, weights = module.group.weighted_ball(radius)
    pinv_rows = _permutation_conjugators(module, radius)
    out = np.zeros_like(t_op)
    if pinv_rows is not None:
        _kernels.accumulate_permuted(t_op, pinv_rows, weights, out)
    else:
        mats = _dense_conjugators(module.generator_list(), module.group, radius)
        for w, u in zip(weights, mats):
            out += w * (u @ t_op @ u.conj().T)
    tail = module.group.weight_tail_bound(radius) * op_norm(t_op)
    return hermitize(out)[0], tail


def _averaged_forward_metric(module, metric: QuantumMetric, cfg: LiftConfig):
    """Eigen-system of the averaged forward transform of the metric."""
    radius = resolve_ball_radius(module, cfg)
    f_of_g = apply_scalar_function(metric.G, f, (-1e-9, cfg.epsilon_guard))
    averaged, tail = average(f_of_g, module, radius)
    w, v = hermitian_eigensystem(averaged)
    limit = 1.0 - cfg.scale_margin / 2.0
    if w.size and w[-1] >= limit:
        raise DomainBreachError(
            f"averaged eigenvalue {w[-1]:.6g} >= {limit:.6g}; rescale the metric "
            f"(smaller sigma) or increase scale_margin"
        )
    return w, v, tail, radius


def kernel_split(
    module: FredholmModule, metric: QuantumMetric, cfg: LiftConfig | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the kernel block of the averaged metric and its complement.

    Membership: eigenvalue <= kernel_tol times the norm of the averaged
    operator.  Warns if the kernel block fails to annihilate some masked
    generator commutator.
    """
    cfg = cfg or LiftConfig()
    w, v, _, _ = _averaged_forward_metric(module, metric, cfg)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    in_kernel = w <= cfg.kernel_tol * norm
    v0, v1 = v[:, in_kernel], v[:, ~in_kernel]
    p0 = hermitize(v0 @ v0.conj().T)[0]
    p1 = hermitize(v1 @ v1.conj().T)[0]
    for lab in module.generator_labels:
        c_op = module.masked_commutator(lab)
        c_norm = op_norm(c_op)
        if c_norm > 0 and v0.size and op_norm(c_op @ v0) > 1e-8 * c_norm:
            warnings.warn(
                f"kernel block does not annihilate [F, {lab}] "
                f"(residual {op_norm(c_op @ v0):.3e})",
                stacklevel=2,
            )
    return p0, p1


def g0_default(dim0: int, cfg: LiftConfig, p: float = 2.0) -> np.ndarray:
    """Strictly positive diagonal replacement metric for the kernel block."""
    if dim0 < 1:
        raise ValueError("dim0 must be >= 1")
    exponent = cfg.g0_exponent if cfg.g0_exponent is not None else 6.0 / p
    d = (np.arange(dim0) + 1.0) ** -exponent
    return np.diag(d).astype(complex)


def _kernel_block_transform(module, v0: np.ndarray, cfg: LiftConfig, p: float):
    """Lift machinery on the kernel block, fed by the replacement metric.

    Returns eigenvalues/vectors (in kernel-block coordinates) of the averaged
    forward transform of the rescaled replacement metric, plus diagnostics.
    Group elements act through their compression to the block.
    """
    dim0 = v0.shape[1]
    radius = resolve_ball_radius(module, cfg)
    g0 = g0_default(dim0, cfg, p)
    mass = module.group.weight_sum(radius) + module.group.weight_tail_bound(radius)
    sigma0 = admissible_scale(op_norm(g0), mass, cfg)
    fg0 = apply_scalar_function(sigma0 * g0, f, (-1e-9, cfg.epsilon_guard))
    pinv_rows = _permutation_conjugators(module, radius)
    if pinv_rows is not None:
        # (U_g V0) is a row gather, so compressions never materialize U_g
        blocks = [v0.conj().T @ v0[pinv, :] for pinv in pinv_rows]
    else:
        mats = _dense_conjugators(module.generator_list(), module.group, radius)
        blocks = [v0.conj().T @ u @ v0 for u in mats]
    _, weights = module.group.weighted_ball(radius)
    acc = np.zeros((dim0, dim0), dtype=complex)
    leakage = 0.0
    for w_elt, u_block in zip(weights, blocks):
        leakage = max(leakage, op_norm(u_block @ u_block.conj().T - np.eye(dim0)))
        acc += w_elt * (u_block @ fg0 @ u_block.conj().T)
    acc = hermitize(acc)[0]
    w0, vecs0 = hermitian_eigensystem(acc)
    limit = 1.0 - cfg.scale_margin / 2.0
    if w0.size and w0[-1] >= limit:
        raise DomainBreachError(f"kernel-block averaged eigenvalue {w0[-1]:.6g} >= {limit:.6g}")
    if w0.size and w0[0] <= 0.0:
        raise SpectralLiftError(
            f"averaged replacement metric not positive on kernel block (min {w0[0]:.3e})"
        )
    return w0, vecs0, sigma0, leakage


def theta(
    metric: QuantumMetric, module: FredholmModule, cfg: LiftConfig | None = None
) -> np.ndarray:
    """Transformed metric f_inv(averaged f(metric)), assembled over both blocks."""
    cfg = cfg or LiftConfig()
    return build_triple(module, cfg, metric=metric).theta


def build_triple(
    module: FredholmModule, cfg: LiftConfig | None = None, metric: QuantumMetric | None = None
) -> SpectralTriple:
    """Run the whole lift and assemble D = F |D|.

    |D| is built blockwise from the inverse square root of the transformed
    metric via the two-sided formula that forces [F, |D|] = 0.  All residuals
    and construction constants are logged in the provenance.
    """
    cfg = cfg or LiftConfig()
    n = module.dim
    p = resolve_p(module, cfg)
    degenerate = False
    if metric is None:
        try:
            metric = quantum_metric(module, cfg)
        except DegenerateModuleError:
            degenerate = True
            metric = QuantumMetric(np.zeros((n, n), dtype=complex), {}, 1.0, p)
    p = metric.p_used if not degenerate else p

    w, v, tail, radius = _averaged_forward_metric(module, metric, cfg)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    in_kernel = w <= cfg.kernel_tol * norm
    v0, v1 = v[:, in_kernel], v[:, ~in_kernel]
    w1 = w[~in_kernel]

    theta_vals_1 = f_inv(w1)
    if np.any(theta_vals_1 <= 0.0):
        raise SpectralLiftError("transformed metric not invertible outside the kernel block")
    theta_op = (v1 * theta_vals_1) @ v1.conj().T
    half_inv = (v1 * theta_vals_1**-0.5) @ v1.conj().T

    sigma0 = None
    leakage0 = 0.0
    if v0.shape[1] > 0:
        w0, vecs0, sigma0, leakage0 = _kernel_block_transform(module, v0, cfg, p)
        theta0_vals = f_inv(w0)
        if np.any(theta0_vals <= 0.0):
            raise SpectralLiftError("transformed metric not invertible on the kernel block")
        basis0 = v0 @ vecs0
        theta_op = theta_op + (basis0 * theta0_vals) @ basis0.conj().T
        half_inv = half_inv + (basis0 * theta0_vals**-0.5) @ basis0.conj().T

    theta_op, theta_asym = hermitize(theta_op)
    abs_d = half_inv + module.F @ half_inv @ module.F.conj().T
    abs_d, absd_asym = hermitize(abs_d)
    d_op = module.F @ abs_d
    d_op, d_asym = hermitize(d_op)

    p0 = hermitize(v0 @ v0.conj().T)[0]
    p1 = hermitize(v1 @ v1.conj().T)[0]

    from .operators import commutator  # local import to avoid cycle at module load

    residuals = {
        "theta_asymmetry": theta_asym,
        "absD_asymmetry": absd_asym,
        "D_asymmetry": d_asym,
        "F_absD_commutator": op_norm(commutator(module.F, abs_d)),
        "block_leakage_F": op_norm(p0 @ module.F @ p1),
        "kernel_block_unitarity": leakage0,
    }
    provenance = {
        "config": asdict(cfg),
        "p_used": p,
        "mode": cfg.mode,
        "ball_radius": radius,
        "sigma": metric.scale,
        "sigma0": sigma0,
        "coefficients": dict(metric.coefficients),
        "tail_bound": tail,
        "kernel_dim": int(v0.shape[1]),
        "degenerate_metric": degenerate,
        "residuals": residuals,
        "averaging_backend": _kernels.BACKEND,
    }
    return SpectralTriple(d_op, abs_d, module.F.copy(), p0, p1, theta_op, provenance)
