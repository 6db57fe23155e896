# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Fused accumulation kernel for the group-averaging hot loop.

Computes ``out += sum_t w[t] * T[pinv[t], :][:, pinv[t]]`` in one pass,
avoiding the per-term temporaries the NumPy fallback allocates.  Terms are
accumulated in index order so the result is bit-identical to the fallback.
"""


def accumulate_permuted(double complex[:, :] T,
                        long[:, :] pinv,
                        double[:] weights,
                        double complex[:, :] out):
    cdef Py_ssize_t nperm = pinv.shape[0]
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t t, i, j
    cdef long pi
    cdef double w
    if T.shape[1] != n or out.shape[0] != n or out.shape[1] != n:
        raise ValueError("matrix arguments must be square and same size")
    if pinv.shape[1] != n or weights.shape[0] != nperm:
        raise ValueError("permutation/weight shapes inconsistent")
    for t in range(nperm):
        w = weights[t]
        for i in range(n):
            pi = pinv[t, i]
            for j in range(n):
                out[i, j] = out[i, j] + w * T[pi, pinv[t, j]]
