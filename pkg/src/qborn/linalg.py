"""Dense complex matrix arithmetic and Hermitian eigendecomposition.

Everything downstream (projector systems, contexts, Born tables) sits on the
operations in this module. Matrices are plain ``numpy.complex128`` arrays;
the eigensolver is a cyclic complex Jacobi sweep provided by
``qborn.kernels`` (compiled extension when available, pure Python otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qborn import kernels
from qborn.errors import (
    DimMismatchError,
    NoConvergenceError,
    NotCommutingError,
    NotHermitianError,
    ValidationError,
)

# Jacobi stopping rule: off-diagonal Frobenius norm below
# JACOBI_CONV_FACTOR * (1 + ||h||_F) within JACOBI_MAX_SWEEPS sweeps.
JACOBI_CONV_FACTOR = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances: ``eps`` for residual checks, ``eigengap`` for
    merging nearby eigenvalues into one eigenspace (relative to matrix scale).
    """

    eps: float = 1e-9
    eigengap: float = 1e-8

    def __post_init__(self):
        if not (self.eps > 0.0 and np.isfinite(self.eps)):
            raise ValidationError("eps must be a positive finite real")
        if not (self.eigengap > 0.0 and np.isfinite(self.eigengap)):
            raise ValidationError("eigengap must be a positive finite real")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square complex matrix, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimMismatchError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix entries must be finite")
    return a


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    return frobenius(a - a.conj().T) <= tol.eps * (1.0 + frobenius(a))


def is_projector(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Hermitian and idempotent within ``tol.eps``."""
    a = as_matrix(a)
    if not is_hermitian(a, tol):
        return False
    return frobenius(a @ a - a) < tol.eps


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending) with their eigenspace projectors."""

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.projectors[0])
        for lam, p in zip(self.eigenvalues, self.projectors):
            out = out + lam * p
        return out


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _hermitize_projector(basis: np.ndarray) -> np.ndarray:
    p = basis @ basis.conj().T
    return _freeze(0.5 * (p + p.conj().T))


def _group_ascending(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Split sorted values into runs whose consecutive gaps stay below ``gap``."""
    groups: list[np.ndarray] = []
    start = 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > gap:
            groups.append(np.arange(start, k))
            start = k
    return groups


def _jacobi(a: np.ndarray, scale: float):
    d, v, _sweeps, converged = kernels.jacobi_eigh(
        a, JACOBI_CONV_FACTOR * scale, JACOBI_MAX_SWEEPS
    )
    if not converged:
        raise NoConvergenceError(
            f"Jacobi sweep budget ({JACOBI_MAX_SWEEPS}) exhausted on a {a.shape[0]}x{a.shape[0]} matrix"
        )
    order = np.argsort(d, kind="stable")
    return d[order], v[:, order]


def hermitian_eigendecomposition(h, tol: Tolerance = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigenvalues and eigenspace projectors of a Hermitian matrix.

    Eigenvalues closer than ``tol.eigengap * (1 + ||h||_F)`` are merged into
    a single eigenspace, so degenerate spectra come out as higher-rank
    projectors rather than arbitrarily split ones.
    """
    h = as_matrix(h)
    if not is_hermitian(h, tol):
        raise NotHermitianError("input is not Hermitian within tolerance")
    scale = 1.0 + frobenius(h)
    d, v = _jacobi(h, scale)
    eigenvalues = []
    projectors = []
    for idx in _group_ascending(d, tol.eigengap * scale):
        eigenvalues.append(float(np.mean(d[idx])))
        projectors.append(_hermitize_projector(v[:, idx]))
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors))


def hermitian_eigensystem(h, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvector columns."""
    h = as_matrix(h)
    if not is_hermitian(h, tol):
        raise NotHermitianError("input is not Hermitian within tolerance")
    return _jacobi(h, 1.0 + frobenius(h))


def simultaneous_diagonalization(family, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Common-eigenspace projectors of a commuting Hermitian family.

    The first member is diagonalized, then each subsequent member is
    re-diagonalized inside every current joint eigenspace, splitting it where
    the compressed spectrum separates. Output blocks are ordered by the
    ascending eigenvalue tuples, which makes the result deterministic.
    """
    mats = [as_matrix(m) for m in family]
    if not mats:
        raise ValidationError("family must be nonempty")
    n = mats[0].shape[0]
    for k, a in enumerate(mats):
        if a.shape[0] != n:
            raise DimMismatchError("family members must share one dimension")
        if not is_hermitian(a, tol):
            raise NotHermitianError(f"family member {k} is not Hermitian within tolerance")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            bound = tol.eps * (1.0 + frobenius(mats[i]) * frobenius(mats[j]))
            if frobenius(mats[i] @ mats[j] - mats[j] @ mats[i]) >= bound:
                raise NotCommutingError(f"family members {i} and {j} do not commute within tolerance")

    blocks = [np.eye(n, dtype=np.complex128)]
    for a in mats:
        scale = 1.0 + frobenius(a)
        refined = []
        for basis in blocks:
            if basis.shape[1] == 1:
                refined.append(basis)
                continue
            compressed = basis.conj().T @ a @ basis
            compressed = 0.5 * (compressed + compressed.conj().T)
            d, w = _jacobi(compressed, scale)
            for idx in _group_ascending(d, tol.eigengap * scale):
                refined.append(basis @ w[:, idx])
        blocks = refined

    return [_hermitize_projector(b) for b in blocks]


def matrix_to_json(a) -> dict:
    """Matrix wire format: ``{"n": int, "entries": [[{"re","im"}...]...]}``."""
    a = as_matrix(a)
    n = a.shape[0]
    return {
        "n": n,
        "entries": [
            [{"re": float(a[i, j].real), "im": float(a[i, j].imag)} for j in range(n)]
            for i in range(n)
        ],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ValidationError("matrix JSON must have 'n' and 'entries' fields")
    n = obj["n"]
    entries = obj["entries"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError("matrix JSON 'n' must be a positive integer")
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValidationError("matrix JSON 'entries' must be an n-by-n grid")
    a = np.empty((n, n), dtype=np.complex128)
    try:
        for i, row in enumerate(entries):
            for j, cell in enumerate(row):
                a[i, j] = complex(float(cell["re"]), float(cell["im"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"matrix JSON cell is malformed: {exc}") from exc
    return as_matrix(a)
