"""Projector systems, ordered-partition types, refinements and coarsening.

A projector system is a complete orthogonal sequence of projectors in
M_n(C); its type is the ordered partition of n given by the ranks. A
refinement reindexes a fine system onto a coarse one (the map runs from fine
indices to coarse indices), and `coarsen` realizes it by summing fibres.
"""

from __future__ import annotations

import hashlib
import operator
from dataclasses import dataclass

import numpy as np

from qborn.errors import (
    DimMismatchError,
    IndexOutOfRangeError,
    NonIntegerTraceError,
    NotCompleteError,
    NotOrthogonalError,
    NotProjectorError,
    TypeMismatchError,
    ValidationError,
)
from qborn.linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    frobenius,
    is_projector,
    matrix_from_json,
    matrix_to_json,
)

# Entry quantization grid for the canonical sort key and content hashes.
QUANT_GRID = 1e-6


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered sequence of positive integers; ``total`` is their sum."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not len(self.parts):
            raise ValidationError("partition needs at least one part")
        try:
            parts = tuple(int(operator.index(p)) for p in self.parts)
        except TypeError as exc:
            raise ValidationError("partition parts must be integers") from exc
        if any(p < 1 for p in parts):
            raise ValidationError("partition parts must be positive integers")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class Refinement:
    """Reindexing map from fine indices ``1..l`` onto coarse indices ``1..m``.

    ``mapping[i-1]`` is the coarse index absorbing fine index ``i``; a valid
    refinement satisfies ``target[j] = sum of source[i] over mapping i -> j``.
    """

    mapping: tuple[int, ...]
    source: OrderedPartition
    target: OrderedPartition

    def __post_init__(self):
        try:
            mapping = tuple(int(operator.index(j)) for j in self.mapping)
        except TypeError as exc:
            raise ValidationError("refinement map entries must be integers") from exc
        object.__setattr__(self, "mapping", mapping)


def identity_refinement(partition: OrderedPartition) -> Refinement:
    ident = tuple(range(1, len(partition) + 1))
    return Refinement(ident, partition, partition)


def compose_refinements(first: Refinement, second: Refinement) -> Refinement:
    """Refinement doing ``first`` then ``second`` on indices (fine to coarse)."""
    if first.target != second.source:
        raise TypeMismatchError("refinements do not compose: partition mismatch")
    mapping = tuple(second.mapping[j - 1] for j in first.mapping)
    return Refinement(mapping, first.source, second.target)


def check_refinement(r: Refinement) -> bool:
    """True iff every coarse part is the sum of its fine fibre."""
    l, m = len(r.source), len(r.target)
    if len(r.mapping) != l:
        raise IndexOutOfRangeError(f"refinement map must have {l} entries, got {len(r.mapping)}")
    if any(j < 1 or j > m for j in r.mapping):
        raise IndexOutOfRangeError(f"refinement map values must lie in 1..{m}")
    sums = [0] * m
    for i, j in enumerate(r.mapping):
        sums[j - 1] += r.source.parts[i]
    return tuple(sums) == r.target.parts


def coarsen_point(r: Refinement, i: int) -> int:
    """Image of fine spectrum point ``i`` under the coarse-graining map."""
    if not 1 <= i <= len(r.mapping):
        raise IndexOutOfRangeError(f"point {i} outside 1..{len(r.mapping)}")
    return r.mapping[i - 1]


@dataclass(frozen=True, eq=False)
class ProjectorSystem:
    """Complete orthogonal projector sequence; build via ``validate_system``."""

    dim: int
    projectors: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.projectors)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(int(round(float(np.trace(p).real))) for p in self.projectors)


def validate_system(mats, tol: Tolerance = DEFAULT_TOL) -> ProjectorSystem:
    """Check the projector-system invariants and return the system.

    Raises ``NotProjectorError``, ``NotOrthogonalError``, ``NotCompleteError``
    or ``NonIntegerTraceError`` naming the offending member(s).
    """
    ps = [as_matrix(m) for m in mats]
    if not ps:
        raise ValidationError("a projector system needs at least one projector")
    n = ps[0].shape[0]
    if any(p.shape[0] != n for p in ps):
        raise DimMismatchError("projectors must share one dimension")
    for k, p in enumerate(ps):
        if not is_projector(p, tol):
            raise NotProjectorError(k)
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            if frobenius(ps[i] @ ps[j]) >= tol.eps:
                raise NotOrthogonalError(i, j)
    if frobenius(sum(ps) - np.eye(n)) > tol.eps:
        raise NotCompleteError("projectors do not sum to the identity within tolerance")
    for k, p in enumerate(ps):
        t = complex(np.trace(p))
        r = round(t.real)
        if abs(t.imag) > tol.eps or abs(t.real - r) > tol.eps or r < 1:
            raise NonIntegerTraceError(k)
    frozen = []
    for p in ps:
        q = p.copy()
        q.setflags(write=False)
        frozen.append(q)
    return ProjectorSystem(n, tuple(frozen))


def type_of(s: ProjectorSystem) -> OrderedPartition:
    """The ordered partition of n given by the projector ranks."""
    return OrderedPartition(s.ranks)


def coarsen(s: ProjectorSystem, r: Refinement, tol: Tolerance = DEFAULT_TOL) -> ProjectorSystem:
    """Sum the fibres of ``r``: output projector j is the sum of the fine
    projectors mapped to j."""
    if type_of(s) != r.source:
        raise TypeMismatchError(f"system type {type_of(s).parts} != refinement source {r.source.parts}")
    if not check_refinement(r):
        raise TypeMismatchError("refinement does not satisfy the partition-sum condition")
    sums = [np.zeros((s.dim, s.dim), dtype=np.complex128) for _ in range(len(r.target))]
    for i, j in enumerate(r.mapping):
        sums[j - 1] = sums[j - 1] + s.projectors[i]
    return validate_system(sums, tol)


def find_refinement(
    coarse: ProjectorSystem, fine: ProjectorSystem, tol: Tolerance = DEFAULT_TOL
) -> Refinement | None:
    """Decide whether ``coarse`` is a coarsening of ``fine`` and return the
    witnessing refinement.

    Uses the absorption criterion: fine D_i belongs to coarse C_j iff
    C_j.D_i = D_i. Returns None when some fine projector is absorbed by no
    coarse projector or by more than one.
    """
    if coarse.dim != fine.dim:
        raise DimMismatchError("systems must share one dimension")
    mapping = []
    for d in fine.projectors:
        hits = [
            j
            for j, c in enumerate(coarse.projectors, start=1)
            if frobenius(c @ d - d) < tol.eps
        ]
        if len(hits) != 1:
            return None
        mapping.append(hits[0])
    r = Refinement(tuple(mapping), type_of(fine), type_of(coarse))
    if not check_refinement(r):
        return None
    return r


def _quantize(p: np.ndarray) -> np.ndarray:
    """Row-major interleaved (re, im) entries snapped to the 1e-6 grid."""
    flat = p.reshape(-1)
    out = np.empty(2 * flat.size, dtype=np.int64)
    out[0::2] = np.rint(flat.real / QUANT_GRID).astype(np.int64)
    out[1::2] = np.rint(flat.imag / QUANT_GRID).astype(np.int64)
    return out


def _canonical_key(p: np.ndarray):
    return (-int(round(float(np.trace(p).real))), tuple(_quantize(p)))


def canonicalize(s: ProjectorSystem) -> ProjectorSystem:
    """Deterministic reordering: descending rank, then lexicographic on the
    quantized entries. Permutations of a system all map to the same output."""
    order = sorted(range(len(s)), key=lambda k: _canonical_key(s.projectors[k]))
    return ProjectorSystem(s.dim, tuple(s.projectors[k] for k in order))


def system_content_hash(s: ProjectorSystem) -> str:
    """Stable id of the (canonicalized) system via its quantized entries."""
    h = hashlib.sha256()
    h.update(str(s.dim).encode())
    for p in s.projectors:
        h.update(_quantize(p).tobytes())
    return h.hexdigest()[:16]


def system_to_json(s: ProjectorSystem) -> dict:
    return {"dim": s.dim, "projectors": [matrix_to_json(p) for p in s.projectors]}


def system_from_json(obj, tol: Tolerance = DEFAULT_TOL) -> ProjectorSystem:
    if not isinstance(obj, dict) or "dim" not in obj or "projectors" not in obj:
        raise ValidationError("system JSON must have 'dim' and 'projectors' fields")
    mats = [matrix_from_json(m) for m in obj["projectors"]]
    s = validate_system(mats, tol)
    if s.dim != obj["dim"]:
        raise ValidationError(f"system JSON 'dim' {obj['dim']} does not match matrices ({s.dim})")
    return s


def refinement_to_json(r: Refinement) -> dict:
    return {
        "source": list(r.source.parts),
        "target": list(r.target.parts),
        "map": list(r.mapping),
    }


def refinement_from_json(obj) -> Refinement:
    try:
        r = Refinement(
            tuple(int(v) for v in obj["map"]),
            OrderedPartition(tuple(int(v) for v in obj["source"])),
            OrderedPartition(tuple(int(v) for v in obj["target"])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"refinement JSON is malformed: {exc}") from exc
    if not check_refinement(r):
        raise ValidationError("refinement JSON violates the partition-sum condition")
    return r
