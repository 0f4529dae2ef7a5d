"""Real/complex conversion operators and small dense QR kernels.

The complex MIMO model ``Y = H X + W`` is turned into an equivalent
real-valued model by three operators:

* ``check_expand`` maps a complex scalar ``a + ib`` to the 2x2 real matrix
  ``[[a, -b], [b, a]]`` that acts on interleaved (re, im) pairs exactly the
  way the scalar acts on complex numbers.
* ``tilde_interleave`` turns a complex vector into the interleaved real
  vector ``[x1_re, x1_im, ..., xn_re, xn_im]``.
* ``vec_stack`` stacks matrix columns into one vector.

Together they give ``tilde(vec(H X)) = (I_T kron check(H)) tilde(vec(X))``,
which is what everything downstream (equivalent channel, QR, decoders)
operates on.  The QR decomposition is the classical Gram-Schmidt one: the
off-diagonal entries of R are the inner products ``<q_j, h_k>`` of the
orthonormalized columns with the *original* columns, and the diagonal holds
the residual norms.  The decoders rely on exactly this form of R, so no
pivoting or Householder variant is used here.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Columns with norm below this are treated as rank deficiency; for random
# fading channels this is a probability-zero event and the trial is redrawn.
RANK_TOL = 1e-12


class RankDeficiencyError(ValueError):
    """A matrix handed to QR / solve is numerically rank deficient."""


class QRFactors(NamedTuple):
    q: np.ndarray  # (m, n), orthonormal columns
    r: np.ndarray  # (n, n), upper triangular, nonnegative diagonal


def check_expand(z):
    """2x2 real expansion of a complex scalar: a+ib -> [[a, -b], [b, a]]."""
    z = complex(z)
    return np.array([[z.real, -z.imag], [z.imag, z.real]])


def check_expand_matrix(m):
    """Blockwise 2x2 real expansion of a complex m-by-n matrix.

    The (j, k) 2x2 block of the result is ``check_expand(m[j, k])``, so the
    output is 2m-by-2n and satisfies
    ``check_expand_matrix(m) @ tilde_interleave(v) == tilde_interleave(m @ v)``.
    """
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    out = np.empty((2 * rows, 2 * cols))
    out[0::2, 0::2] = m.real
    out[0::2, 1::2] = -m.imag
    out[1::2, 0::2] = m.imag
    out[1::2, 1::2] = m.real
    return out


def tilde_interleave(v):
    """Interleave real and imaginary parts: [x1, .., xn] -> [x1_re, x1_im, ..]."""
    v = np.asarray(v, dtype=complex).ravel()
    out = np.empty(2 * v.size)
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def complex_from_interleaved(v):
    """Inverse of :func:`tilde_interleave`."""
    v = np.asarray(v, dtype=float).ravel()
    return v[0::2] + 1j * v[1::2]


def vec_stack(m):
    """Stack the columns of a matrix into one vector (column-major)."""
    return np.asarray(m).T.ravel()


def kron_identity_apply(block, t, m):
    """Compute ``(I_t kron block) @ m`` without forming the Kronecker product.

    ``block`` is (p, q); ``m`` must have ``t * q`` rows.  The result is the
    (t*p, cols) matrix obtained by applying ``block`` to each of the t
    row-groups of ``m``.
    """
    block = np.asarray(block, dtype=float)
    m = np.asarray(m, dtype=float)
    p, q = block.shape
    if m.shape[0] != t * q:
        raise ValueError(
            f"dimension mismatch: (I_{t} kron {p}x{q}) needs {t * q} rows, got {m.shape[0]}"
        )
    out = np.empty((t * p, m.shape[1]))
    for i in range(t):
        out[i * p : (i + 1) * p] = block @ m[i * q : (i + 1) * q]
    return out


def gram_schmidt_qr(a):
    """Classical Gram-Schmidt QR of a tall matrix with independent columns.

    Returns ``QRFactors(q, r)`` with ``a = q @ r``, orthonormal columns in
    ``q`` and an upper-triangular ``r`` whose entries are
    ``r[j, j] = ||residual_j||`` and ``r[j, k] = <q_j, a[:, k]>`` for j < k.
    Entries below the diagonal are exact zeros by construction.

    Raises
    ------
    RankDeficiencyError
        If a residual column norm falls below ``RANK_TOL``.
    """
    a = np.asarray(a, dtype=float)
    m, n = a.shape
    if m < n:
        raise ValueError("need at least as many rows as columns")
    q = np.zeros((m, n))
    r = np.zeros((n, n))
    for j in range(n):
        col = a[:, j]
        if j:
            # classical (not modified) GS: all coefficients from the original column
            coeff = q[:, :j].T @ col
            r[:j, j] = coeff
            v = col - q[:, :j] @ coeff
        else:
            v = col.copy()
        norm = float(np.linalg.norm(v))
        if norm < RANK_TOL:
            raise RankDeficiencyError(f"column {j} numerically dependent (norm {norm:.3e})")
        r[j, j] = norm
        q[:, j] = v / norm
    return QRFactors(q, r)


def back_substitute(r, z):
    """Solve ``r @ x = z`` for upper-triangular ``r``."""
    r = np.asarray(r, dtype=float)
    z = np.asarray(z, dtype=float)
    n = r.shape[0]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (z[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
    return x


def solve_linear(a, b):
    """Solve the square system ``a @ x = b`` via Gram-Schmidt QR.

    Raises :class:`RankDeficiencyError` when ``a`` is numerically singular.
    """
    q, r = gram_schmidt_qr(a)
    return back_substitute(r, q.T @ np.asarray(b, dtype=float))
