"""Numerical lifting of bounded Fredholm modules to spectral triples.

Build a quantum metric from symmetry/generator commutators, average it over
a polynomial-growth group with exponential length weights, push it through an
operator-monotone transform, and assemble a Dirac operator whose sign
recovers the original symmetry.  A verifier certifies every inequality the
construction rests on at finite truncation.
"""

from ._kernels import BACKEND as averaging_backend
from .fredholm import (
    FredholmModule,
    SummabilityReport,
    build_circle_module,
    build_torus_module,
    summability_report,
    validate_axioms,
)
from .groups import CyclicGroup, FreeAbelianGroup, GroupSpec, group_from_spec
from .interchange import load_module, load_triple, save_module, save_triple
from .lift import (
    LiftConfig,
    QuantumMetric,
    SpectralTriple,
    average,
    build_triple,
    g0_default,
    kernel_split,
    quantum_metric,
    theta,
)
from .transform import f, f_inv, f_inv_complex
from .verify import VerificationReport, commutator_norm_sweep, verify_triple

__version__ = "0.1.0"

__all__ = [
    "averaging_backend",
    "FredholmModule",
    "SummabilityReport",
    "build_circle_module",
    "build_torus_module",
    "summability_report",
    "validate_axioms",
    "CyclicGroup",
    "FreeAbelianGroup",
    "GroupSpec",
    "group_from_spec",
    "load_module",
    "load_triple",
    "save_module",
    "save_triple",
    "LiftConfig",
    "QuantumMetric",
    "SpectralTriple",
    "average",
    "build_triple",
    "g0_default",
    "kernel_split",
    "quantum_metric",
    "theta",
    "f",
    "f_inv",
    "f_inv_complex",
    "VerificationReport",
    "commutator_norm_sweep",
    "verify_triple",
    "__version__",
]
