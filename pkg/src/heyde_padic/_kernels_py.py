"""Reference numpy implementations of the inner loops in ``_kernels.pyx``.

Signatures and return conventions match the compiled module exactly; a
witness is encoded as ``row * N + col`` (``-1`` when none exists) and is
always the lexicographically first violating pair.
"""

import numpy as np

BACKEND = "python"


def _joint(w1, w2, t, N):
    x = np.arange(N, dtype=np.int64)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    idx = ((X1 + X2) % N) * N + (X1 + t * X2) % N
    J = np.zeros(N * N, dtype=np.int64)
    np.add.at(J, idx.ravel(), np.outer(w1, w2).ravel())
    return J.reshape(N, N)


def joint_witness(w1, w2, t, N):
    """Compare the joint law of ``(x1+x2, x1+t*x2)`` with its reflection in the second slot.

    Returns ``(witness, max_abs_difference)`` in units of the weight product.
    """
    w1 = np.asarray(w1, dtype=np.int64)
    w2 = np.asarray(w2, dtype=np.int64)
    J = _joint(w1, w2, int(t) % N, N)
    neg = (-np.arange(N)) % N
    diff = np.abs(J - J[:, neg])
    bad = np.flatnonzero(diff.ravel())
    return (int(bad[0]) if bad.size else -1), int(diff.max())


def fourier_residual(f, g, t, N, tol):
    """Max of ``|f(u+v)g(u+tv) - f(u-v)g(u-tv)|`` over all ``u, v`` and the first pair above ``tol``."""
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    y = np.arange(N, dtype=np.int64)
    U, V = np.meshgrid(y, y, indexing="ij")
    t = int(t) % N
    lhs = f[(U + V) % N] * g[(U + t * V) % N]
    rhs = f[(U - V) % N] * g[(U - t * V) % N]
    diff = np.abs(lhs - rhs).ravel()
    bad = np.flatnonzero(diff > tol)
    return float(diff.max()), (int(bad[0]) if bad.size else -1)


def exact_fourier_witness(F, G, t, N):
    """Integer-valued analogue of :func:`fourier_residual` (tables pre-scaled to integers)."""
    F = np.asarray(F, dtype=np.int64)
    G = np.asarray(G, dtype=np.int64)
    y = np.arange(N, dtype=np.int64)
    U, V = np.meshgrid(y, y, indexing="ij")
    t = int(t) % N
    lhs = F[(U + V) % N] * G[(U + t * V) % N]
    rhs = F[(U - V) % N] * G[(U - t * V) % N]
    diff = np.abs(lhs - rhs).ravel()
    bad = np.flatnonzero(diff)
    return (int(bad[0]) if bad.size else -1), int(diff.max())


def enumerate_pairs(W1, W2, t, N, start, stop):
    """Indices ``(i, j)`` with ``start <= i < stop`` whose rows give a symmetric joint law.

    Counts go through float64 bincount, so callers keep ``max(W1)*max(W2)*N < 2**53``.
    """
    W1 = np.asarray(W1, dtype=np.int64)
    W2 = np.asarray(W2, dtype=np.int64)
    t = int(t) % N
    x = np.arange(N, dtype=np.int64)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    idx = (((X1 + X2) % N) * N + (X1 + t * X2) % N).ravel()
    neg = (-x) % N
    out = []
    for i in range(start, stop):
        prod = W1[i][:, None]
        for j in range(W2.shape[0]):
            J = np.bincount(idx, weights=(prod * W2[j][None, :]).ravel(), minlength=N * N)
            J = J.reshape(N, N)
            if np.array_equal(J, J[:, neg]):
                out.append((i, j))
    return np.array(out, dtype=np.int64).reshape(-1, 2)
