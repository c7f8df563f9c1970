# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Cyclic complex Jacobi eigensolver, compiled hot path.

Same algorithm and rotation order as ``qborn.kernels._jacobi_py``; the two
must stay interchangeable.
"""

import numpy as np

from libc.math cimport sqrt


def jacobi_eigh(h, double conv_tol, int max_sweeps):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    h : (n, n) complex array, Hermitian.
    conv_tol : stop once the off-diagonal Frobenius norm drops below this.
    max_sweeps : sweep budget.

    Returns
    -------
    (diag, vectors, sweeps, converged) where ``vectors`` has the
    eigenvectors as columns and ``diag[k]`` is the eigenvalue of column k.
    """
    a = np.array(h, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    cdef double complex[:, ::1] A = a
    cdef double complex[:, ::1] V = v
    cdef Py_ssize_t p, q, k, sweep
    cdef double off, ab, tau, t, c, s
    cdef double complex beta, phase, phase_c, xp, xq
    # Rotations on pivots below skip_tol are skipped: n*n of them still keep
    # the off-diagonal norm under conv_tol.
    cdef double skip_tol = conv_tol / (n * n) if n > 0 else 0.0

    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
        if sqrt(off) <= conv_tol:
            return np.real(np.diagonal(a)).copy(), v, sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = A[p, q]
                ab = sqrt(beta.real * beta.real + beta.imag * beta.imag)
                if ab <= skip_tol:
                    continue
                phase = beta / ab
                phase_c = phase.conjugate()
                tau = (A[q, q].real - A[p, p].real) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A <- A.U on columns p,q, then A <- U^H.A on rows p,q.
                for k in range(n):
                    xp = A[k, p]
                    xq = A[k, q]
                    A[k, p] = c * phase * xp - s * xq
                    A[k, q] = s * phase * xp + c * xq
                for k in range(n):
                    xp = A[p, k]
                    xq = A[q, k]
                    A[p, k] = c * phase_c * xp - s * xq
                    A[q, k] = s * phase_c * xp + c * xq
                for k in range(n):
                    xp = V[k, p]
                    xq = V[k, q]
                    V[k, p] = c * phase * xp - s * xq
                    V[k, q] = s * phase * xp + c * xq

    off = 0.0
    for p in range(n):
        for q in range(n):
            if p != q:
                off += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    return np.real(np.diagonal(a)).copy(), v, max_sweeps, sqrt(off) <= conv_tol
