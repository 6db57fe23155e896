"""Backend selection for the averaging hot loop.

The compiled Cython kernel is preferred; the NumPy fallback is used when the
extension is unavailable or ``SPECTRAL_LIFT_NO_EXT`` is set.  Both produce
bit-identical output.
"""

import os

from . import fallback

accumulate_permuted_numpy = fallback.accumulate_permuted

if os.environ.get("SPECTRAL_LIFT_NO_EXT"):
    accumulate_permuted = fallback.accumulate_permuted
    BACKEND = "numpy"
else:
    try:
        from ._avg_cy import accumulate_permuted

        BACKEND = "cython"
    except ImportError:
        accumulate_permuted = fallback.accumulate_permuted
        BACKEND = "numpy"

__all__ = ["accumulate_permuted", "accumulate_permuted_numpy", "BACKEND"]
