"""Pure-Python twin of the compiled Jacobi kernel.

Implements exactly the same cyclic rotation order as ``_jacobi.pyx`` so the
two backends are interchangeable; row/column updates use numpy slices.
"""

from __future__ import annotations

import math

import numpy as np


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(h, conv_tol: float, max_sweeps: int):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(diag, vectors, sweeps, converged)``; see the compiled kernel
    for the contract.
    """
    a = np.array(h, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    skip_tol = conv_tol / (n * n) if n > 0 else 0.0

    for sweep in range(max_sweeps):
        if _off_norm(a) <= conv_tol:
            return np.real(np.diagonal(a)).copy(), v, sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                ab = abs(beta)
                if ab <= skip_tol:
                    continue
                phase = beta / ab
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- A.U on columns p,q, then A <- U^H.A on rows p,q.
                colp, colq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * phase * colp - s * colq
                a[:, q] = s * phase * colp + c * colq
                rowp, rowq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * np.conj(phase) * rowp - s * rowq
                a[q, :] = s * np.conj(phase) * rowp + c * rowq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * phase * vp - s * vq
                v[:, q] = s * phase * vp + c * vq

    return np.real(np.diagonal(a)).copy(), v, max_sweeps, _off_norm(a) <= conv_tol
