"""Trace-pairing tables between contexts and the checks that tie them to
textbook probability rules.

For contexts C and D the table holds Tr(C_i.D_j) on the product spectrum.
Tables are deliberately unnormalized: coarse-graining then pushes the fine
table exactly onto the coarse one, a law that normalization would break.
Probabilities are extracted explicitly through ``normalize`` or through
``pure_state_section``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qborn.errors import (
    DimMismatchError,
    NonRealTraceError,
    NotComparableError,
    NotInContextError,
    RankNotOneError,
    ValidationError,
    ZeroVectorError,
)
from qborn.linalg import (
    DEFAULT_TOL,
    Tolerance,
    frobenius,
    hermitian_eigensystem,
    is_hermitian,
)
from qborn.poset import Context, ContextPoset
from qborn.systems import Refinement, coarsen
from qborn.valuations import FiniteValuation, ProbabilityValuation, pushforward

IMAG_RESIDUE_FACTOR = 1e-10
NEGATIVE_CLAMP = -1e-12


@dataclass(frozen=True, eq=False)
class BornTable:
    """Unnormalized pairing valuation on Spec(left) x Spec(right).

    Row marginals equal the left ranks, column marginals the right ranks,
    and the total mass is the dimension; ``invariant_violations`` reports
    any failures instead of raising, for diagnostic output.
    """

    left: Context
    right: Context
    table: FiniteValuation

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.left), len(self.right))

    def entry(self, i: int, j: int) -> float:
        return self.table.weight((i, j))

    def as_array(self) -> np.ndarray:
        rows, cols = self.shape
        return np.asarray(self.table.weights, dtype=float).reshape(rows, cols)

    def row_marginals(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self.as_array().sum(axis=1))

    def col_marginals(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self.as_array().sum(axis=0))

    @property
    def total(self) -> float:
        return self.table.total

    def invariant_violations(self, atol: float = 1e-9) -> list[str]:
        """Human-readable list of violated table invariants, empty if none."""
        out = []
        arr = self.as_array()
        mu = self.left.system.ranks
        nu = self.right.system.ranks
        for i, (got, want) in enumerate(zip(self.row_marginals(), mu), start=1):
            if abs(got - want) > atol:
                out.append(f"row marginal {i} is {got!r}, expected {want}")
        for j, (got, want) in enumerate(zip(self.col_marginals(), nu), start=1):
            if abs(got - want) > atol:
                out.append(f"column marginal {j} is {got!r}, expected {want}")
        if abs(self.total - self.left.dim) > atol:
            out.append(f"total mass is {self.total!r}, expected {self.left.dim}")
        for i in range(arr.shape[0]):
            for j in range(arr.shape[1]):
                if arr[i, j] > min(mu[i], nu[j]) + atol:
                    out.append(
                        f"entry ({i + 1}, {j + 1}) = {arr[i, j]!r} exceeds min(rank, rank) = "
                        f"{min(mu[i], nu[j])}"
                    )
        swapped = born_table(self.right, self.left)
        if float(np.max(np.abs(arr - swapped.as_array().T))) > 1e-12:
            out.append("table is not symmetric under swapping the two contexts")
        return out


def born_table(c: Context, d: Context, tol: Tolerance = DEFAULT_TOL) -> BornTable:
    """Pairing table entry (i, j) = Re Tr(C_i.D_j), clamped at zero.

    The traces are real for valid systems; an imaginary residue beyond
    1e-10·n or a negative real part below -1e-12 reports invalid inputs.
    """
    if c.dim != d.dim:
        raise DimMismatchError("contexts must share one dimension")
    n = c.dim
    points = []
    weights = []
    for i, ci in enumerate(c.system.projectors, start=1):
        for j, dj in enumerate(d.system.projectors, start=1):
            val = complex(np.trace(ci @ dj))
            if abs(val.imag) >= IMAG_RESIDUE_FACTOR * n:
                raise NonRealTraceError(
                    f"Tr(C_{i}.D_{j}) has imaginary residue {val.imag!r}"
                )
            w = val.real
            if w < 0.0:
                if w < NEGATIVE_CLAMP:
                    raise ValidationError(
                        f"Tr(C_{i}.D_{j}) = {w!r} is negative beyond rounding"
                    )
                w = 0.0
            points.append((i, j))
            weights.append(w)
    return BornTable(c, d, FiniteValuation(tuple(points), tuple(weights)))


def _check_witness(coarse: Context, fine: Context, r: Refinement, tol: Tolerance) -> None:
    try:
        got = coarsen(fine.system, r, tol)
    except ValidationError as exc:
        raise NotComparableError(f"witness does not coarsen the fine context: {exc}") from exc
    if len(got) != len(coarse.system) or any(
        frobenius(a - b) > tol.eps for a, b in zip(got.projectors, coarse.system.projectors)
    ):
        raise NotComparableError("witness does not map the fine context onto the coarse one")


def coherence_check(
    fine_pair: tuple[Context, Context],
    coarse_pair: tuple[Context, Context],
    witnesses: tuple[Refinement, Refinement],
    tol: Tolerance = DEFAULT_TOL,
    atol: float = 1e-8,
) -> bool:
    """Does the fine table push forward exactly onto the coarse table?

    The left witness sends Spec(fine left) to Spec(coarse left), likewise
    on the right; the pushforward along the pair map is compared entrywise.
    """
    fine_left, fine_right = fine_pair
    coarse_left, coarse_right = coarse_pair
    r, s = witnesses
    _check_witness(coarse_left, fine_left, r, tol)
    _check_witness(coarse_right, fine_right, s, tol)
    fine = born_table(fine_left, fine_right, tol)
    coarse = born_table(coarse_left, coarse_right, tol)
    target = tuple((i, j) for i in range(1, len(coarse_left) + 1) for j in range(1, len(coarse_right) + 1))
    pushed = pushforward(
        fine.table,
        lambda pt: (r.mapping[pt[0] - 1], s.mapping[pt[1] - 1]),
        target_points=target,
    )
    return pushed.isclose(coarse.table, atol=atol)


def _unit_range_vector(p: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(p, axis=0)
    k = int(np.argmax(norms))
    if norms[k] == 0.0:
        raise ZeroVectorError("projector has no nonzero column")
    return p[:, k] / norms[k]


def rank1_check(c: Context, i: int, d: Context, atol: float = 1e-10) -> bool:
    """For a rank-one row, does the table match the quadratic form values?

    Extracts a unit vector spanning the range of the i-th left projector
    and compares entry (i, j) with <psi|D_j|psi> for every j.
    """
    if not 1 <= i <= len(c):
        raise ValidationError(f"spectrum point {i} out of range 1..{len(c)}")
    p = c.system.projectors[i - 1]
    if c.system.ranks[i - 1] != 1:
        raise RankNotOneError(f"projector {i} has rank {c.system.ranks[i - 1]}, not 1")
    psi = _unit_range_vector(p)
    table = born_table(c, d)
    for j, dj in enumerate(d.system.projectors, start=1):
        expected = float(np.real(psi.conj() @ (dj @ psi)))
        if abs(table.entry(i, j) - expected) >= atol:
            return False
    return True


def rank_k_decomposition_check(
    c: Context, i: int, d: Context, tol: Tolerance = DEFAULT_TOL, atol: float = 1e-9
) -> bool:
    """Does entry (i, j) equal the sum of quadratic forms over an
    orthonormal basis of the i-th left projector's range?"""
    if not 1 <= i <= len(c):
        raise ValidationError(f"spectrum point {i} out of range 1..{len(c)}")
    p = c.system.projectors[i - 1]
    values, vectors = hermitian_eigensystem(p, tol)
    basis = vectors[:, values > 0.5]
    table = born_table(c, d, tol)
    for j, dj in enumerate(d.system.projectors, start=1):
        expected = float(np.real(np.einsum("nk,nm,mk->", basis.conj(), dj, basis)))
        if abs(table.entry(i, j) - expected) >= atol:
            return False
    return True


@dataclass(frozen=True, eq=False)
class PureState:
    """A nonzero state vector; Born weights divide by its squared norm, so
    normalization is never assumed."""

    vector: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.vector, dtype=np.complex128).reshape(-1)
        if v.size == 0 or not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
            raise ValidationError("state vector must be finite and nonempty")
        if float(np.linalg.norm(v)) == 0.0:
            raise ZeroVectorError("state vector must be nonzero")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @property
    def dim(self) -> int:
        return int(self.vector.size)


def pure_state_section(psi: PureState, c: Context) -> ProbabilityValuation:
    """Outcome weights of the state in one context: <psi|C_i|psi>/<psi|psi>."""
    if psi.dim != c.dim:
        raise DimMismatchError("state and context must share one dimension")
    v = psi.vector
    norm2 = float(np.real(v.conj() @ v))
    weights = []
    for p in c.system.projectors:
        w = float(np.real(v.conj() @ (p @ v))) / norm2
        weights.append(max(w, 0.0))
    return ProbabilityValuation(tuple(range(1, len(c) + 1)), tuple(weights))


def section_compatibility_check(
    psi: PureState, poset: ContextPoset, atol: float = 1e-10
) -> bool:
    """Do the per-context weights of a state form a section of the bundle?

    For every comparable pair, pushing the finer context's weights along
    the restriction map must give the coarser context's weights.
    """
    sections = {cid: pure_state_section(psi, poset.get(cid)) for cid in poset.ids()}
    for (low, high) in poset.order:
        mapping = poset.restriction_map(low, high)
        pushed = pushforward(
            sections[high],
            lambda i: mapping[i - 1],
            target_points=sections[low].points,
        )
        if not pushed.isclose(sections[low], atol=atol):
            return False
    return True


def observable_distribution(
    c: Context, o, weights: FiniteValuation, tol: Tolerance = DEFAULT_TOL
) -> FiniteValuation:
    """Distribution of an observable's value under outcome weights.

    The observable must be a real combination of the context's projectors;
    its value on spectrum point i is recovered as Re Tr(o.C_i)/rank and the
    weights are pushed forward onto those values, merging values closer
    than the eigengap tolerance.
    """
    o = np.asarray(o, dtype=np.complex128)
    if not is_hermitian(o, tol):
        raise NotInContextError("observable is not Hermitian within tolerance")
    if o.shape != (c.dim, c.dim):
        raise DimMismatchError("observable dimension does not match the context")
    spectrum = tuple(range(1, len(c) + 1))
    if set(weights.points) != set(spectrum):
        raise ValidationError("weights must live on the context's spectrum")
    scale = 1.0 + frobenius(o)
    values = []
    recon = np.zeros_like(o)
    for p, rank in zip(c.system.projectors, c.system.ranks):
        lam = float(np.real(np.trace(o @ p))) / rank
        values.append(lam)
        recon = recon + lam * p
    if frobenius(o - recon) > tol.eps * scale:
        raise NotInContextError(
            "observable is not a real combination of the context's projectors"
        )
    # Merge spectrum points whose values coincide within the gap tolerance.
    gap = tol.eigengap * scale
    order = sorted(range(len(values)), key=lambda k: values[k])
    groups: list[list[int]] = [[order[0]]]
    for k in order[1:]:
        if values[k] - values[groups[-1][-1]] <= gap:
            groups[-1].append(k)
        else:
            groups.append([k])
    representative = {}
    targets = []
    for group in groups:
        rep = float(np.mean([values[k] for k in group]))
        targets.append(rep)
        for k in group:
            representative[k + 1] = rep
    return pushforward(weights, lambda i: representative[i], target_points=tuple(targets))


def born_report(table: BornTable, atol: float = 1e-9) -> dict:
    """JSON-ready report of a table with marginals and invariant check."""
    return {
        "left": table.left.id,
        "right": table.right.id,
        "rows": [[float(x) for x in row] for row in table.as_array()],
        "row_marginals": list(table.row_marginals()),
        "col_marginals": list(table.col_marginals()),
        "total": table.total,
        "violations": table.invariant_violations(atol),
    }


def born_csv(table: BornTable) -> str:
    """CSV mirror of the table rows, shortest round-trip floats."""
    lines = [",".join(repr(float(x)) for x in row) for row in table.as_array()]
    return "\n".join(lines) + "\n"
