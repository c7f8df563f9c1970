"""The two-dimensional worked instance.

Trace-one projectors in M_2(C) are parametrized by unit vectors on the
2-sphere via P = (I + a.sigma)/2; a vector and its antipode generate the
same context, so contexts of type (1,1) form the projective plane. The
closed-form pairing values (1 +/- a.b)/2 cross-check the generic machinery
against hand arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qborn.errors import NotTraceOneProjectorError, NotUnitError, ValidationError
from qborn.linalg import DEFAULT_TOL, Tolerance, as_matrix, frobenius, is_projector
from qborn.poset import Context, make_context
from qborn.systems import validate_system

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
for _p in (PAULI_X, PAULI_Y, PAULI_Z):
    _p.setflags(write=False)

UNIT_ATOL = 1e-12
# A projector and its antipode differ by sqrt(2) in Frobenius norm, so any
# threshold well below that separates them safely.
SIGN_MATCH_ATOL = 1e-6


@dataclass(frozen=True)
class BlochVector:
    """A unit 3-vector; squared norm must be 1 within 1e-12."""

    ax: float
    ay: float
    az: float

    def __post_init__(self):
        for v in (self.ax, self.ay, self.az):
            if not math.isfinite(v):
                raise ValidationError("components must be finite")
        if abs(self.norm_squared - 1.0) > UNIT_ATOL:
            raise NotUnitError(f"squared norm is {self.norm_squared!r}, expected 1")

    @property
    def norm_squared(self) -> float:
        return self.ax * self.ax + self.ay * self.ay + self.az * self.az

    def dot(self, other: "BlochVector") -> float:
        return self.ax * other.ax + self.ay * other.ay + self.az * other.az

    def antipode(self) -> "BlochVector":
        return BlochVector(-self.ax, -self.ay, -self.az)


def bloch_unit(ax: float, ay: float, az: float, atol: float = UNIT_ATOL) -> BlochVector:
    """Build a BlochVector, normalizing when within ``atol`` of unit length."""
    norm = math.sqrt(ax * ax + ay * ay + az * az)
    if abs(norm - 1.0) > atol:
        raise NotUnitError(f"vector norm is {norm!r}, expected 1 within {atol!r}")
    return BlochVector(ax / norm, ay / norm, az / norm)


def bloch_to_projector(a: BlochVector) -> np.ndarray:
    """P = (I + ax.X + ay.Y + az.Z)/2, the trace-one projector along a."""
    p = 0.5 * (np.eye(2, dtype=np.complex128) + a.ax * PAULI_X + a.ay * PAULI_Y + a.az * PAULI_Z)
    p.setflags(write=False)
    return p


def projector_to_bloch(p, tol: Tolerance = DEFAULT_TOL) -> BlochVector:
    """Inverse parametrization: a_k = Re Tr(p.sigma_k)."""
    p = as_matrix(p)
    if p.shape != (2, 2) or not is_projector(p, tol):
        raise NotTraceOneProjectorError("input is not a 2x2 projector within tolerance")
    if abs(complex(np.trace(p)) - 1.0) > tol.eps:
        raise NotTraceOneProjectorError(f"trace is {complex(np.trace(p))!r}, expected 1")
    return BlochVector(
        float(np.real(np.trace(p @ PAULI_X))),
        float(np.real(np.trace(p @ PAULI_Y))),
        float(np.real(np.trace(p @ PAULI_Z))),
    )


def qubit_context(a: BlochVector) -> Context:
    """The context {P_a, P_-a}; antipodal vectors give the identical context."""
    p = bloch_to_projector(a)
    q = np.eye(2, dtype=np.complex128) - p
    return make_context(validate_system([p, q]))


def qubit_born_closed_form(a: BlochVector, b: BlochVector) -> np.ndarray:
    """Closed-form pairing table (1 + s.t.(a.b))/2 in canonical order.

    The signs s, t record whether each canonical projector points along
    the given vector or its antipode, so the result matches the generic
    table entry for entry.
    """
    signs = []
    for v in (a, b):
        ctx = qubit_context(v)
        p = bloch_to_projector(v)
        row = []
        for q in ctx.system.projectors:
            if frobenius(q - p) < SIGN_MATCH_ATOL:
                row.append(1.0)
            elif frobenius(q - (np.eye(2) - p)) < SIGN_MATCH_ATOL:
                row.append(-1.0)
            else:
                raise ValidationError("canonical projector matches neither pole")
        signs.append(row)
    dot = a.dot(b)
    table = np.empty((2, 2), dtype=float)
    for i in range(2):
        for j in range(2):
            table[i, j] = 0.5 * (1.0 + signs[0][i] * signs[1][j] * dot)
    return table
