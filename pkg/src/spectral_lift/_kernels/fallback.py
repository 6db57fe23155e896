"""Pure NumPy implementation of the averaging accumulation kernel."""

import numpy as np


def accumulate_permuted(T, pinv, weights, out):
    """Accumulate ``out += sum_t weights[t] * T[pinv[t],:][:,pinv[t]]``.

    Terms are added in index order; the compiled kernel follows the same
    order, so both backends produce identical floating-point results.
    """
    n = T.shape[0]
    if T.shape != (n, n) or out.shape != (n, n):
        raise ValueError("matrix arguments must be square and same size")
    if pinv.shape[1] != n or weights.shape[0] != pinv.shape[0]:
        raise ValueError("permutation/weight shapes inconsistent")
    for t in range(pinv.shape[0]):
        idx = pinv[t]
        out += weights[t] * T[np.ix_(idx, idx)]
    return out
