"""Contexts (canonical projector systems), their inclusion order and the
contravariant restriction maps between spectra.

A context is identified with the commutative subalgebra its projector system
generates; canonicalization makes that identification concrete, and the id
is a content hash of the canonical system. ``build_poset`` assembles a
finite poset from commuting observable families: the given contexts, their
pairwise meets (finest common coarsenings) and the bottom context generated
by the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qborn.errors import DimMismatchError, NotComparableError, ValidationError
from qborn.linalg import DEFAULT_TOL, Tolerance, simultaneous_diagonalization
from qborn.systems import (
    ProjectorSystem,
    Refinement,
    canonicalize,
    coarsen,
    find_refinement,
    identity_refinement,
    refinement_from_json,
    refinement_to_json,
    system_content_hash,
    system_from_json,
    system_to_json,
    type_of,
    validate_system,
)


@dataclass(frozen=True, eq=False)
class Context:
    """A canonical projector system with its stable content-hash id."""

    id: str
    system: ProjectorSystem

    @property
    def dim(self) -> int:
        return self.system.dim

    def __len__(self) -> int:
        return len(self.system)


@dataclass(frozen=True)
class Spectrum:
    """The finite discrete point set of a context: labels ``1..l``."""

    context_id: str
    points: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)


def make_context(system: ProjectorSystem) -> Context:
    canonical = canonicalize(system)
    return Context(system_content_hash(canonical), canonical)


def bottom_context(n: int) -> Context:
    """The context of the centre: the single projector ``I_n``, type (n)."""
    return make_context(validate_system([np.eye(n, dtype=np.complex128)]))


def generate_context(observables, tol: Tolerance = DEFAULT_TOL) -> Context:
    """Context generated by a commuting Hermitian family: the canonicalized
    system of joint-eigenspace projectors."""
    projectors = simultaneous_diagonalization(observables, tol)
    return make_context(validate_system(projectors, tol))


def context_leq(c: Context, d: Context, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Inclusion order: c <= d iff d refines c (c is a coarsening of d)."""
    if c.dim != d.dim:
        raise DimMismatchError("contexts must share one dimension")
    if c.id == d.id:
        return True
    return find_refinement(c.system, d.system, tol) is not None


def meet_system(a: ProjectorSystem, b: ProjectorSystem, tol: Tolerance = DEFAULT_TOL) -> ProjectorSystem:
    """Finest common coarsening of two systems.

    Connected components of the bipartite graph with an edge (i, j) whenever
    Tr(A_i.B_j) is nonzero beyond tolerance; summing each component on
    either side yields the same projector, which is checked.
    """
    if a.dim != b.dim:
        raise DimMismatchError("systems must share one dimension")
    la, lb = len(a), len(b)
    linked = [
        [float(np.trace(a.projectors[i] @ b.projectors[j]).real) > tol.eps for j in range(lb)]
        for i in range(la)
    ]
    comp_a = [-1] * la
    comp_b = [-1] * lb
    n_comp = 0
    for start in range(la):
        if comp_a[start] >= 0:
            continue
        stack = [("a", start)]
        comp_a[start] = n_comp
        while stack:
            side, k = stack.pop()
            if side == "a":
                for j in range(lb):
                    if linked[k][j] and comp_b[j] < 0:
                        comp_b[j] = n_comp
                        stack.append(("b", j))
            else:
                for i in range(la):
                    if linked[i][k] and comp_a[i] < 0:
                        comp_a[i] = n_comp
                        stack.append(("a", i))
        n_comp += 1
    if any(c < 0 for c in comp_b):
        # A zero-trace projector is impossible in a valid system.
        raise ValidationError("meet components do not cover the second system")
    sums = []
    for comp in range(n_comp):
        from_a = sum(a.projectors[i] for i in range(la) if comp_a[i] == comp)
        from_b = sum(b.projectors[j] for j in range(lb) if comp_b[j] == comp)
        if float(np.linalg.norm(from_a - from_b)) > tol.eps:
            raise ValidationError("meet components disagree between the two systems")
        sums.append(0.5 * (from_a + from_b))
    return validate_system(sums, tol)


@dataclass(eq=False)
class ContextPoset:
    """Finite poset of contexts with stored refinement witnesses.

    ``order`` maps a proper pair (low_id, high_id) with low < high to the
    refinement of high's system onto low's. The poset is immutable once
    built and safe to query concurrently.
    """

    dim: int
    contexts: dict[str, Context]
    order: dict[tuple[str, str], Refinement]
    bottom_id: str
    _neighbors: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        counts = {cid: 0 for cid in self.contexts}
        for low, high in self.order:
            counts[low] += 1
            counts[high] += 1
        self._neighbors = counts

    def ids(self) -> list[str]:
        return list(self.contexts)

    def get(self, cid: str) -> Context:
        if cid not in self.contexts:
            raise ValidationError(f"unknown context id {cid!r}")
        return self.contexts[cid]

    def spectrum(self, cid: str) -> Spectrum:
        return Spectrum(cid, tuple(range(1, len(self.get(cid)) + 1)))

    def spectrum_size(self, cid: str) -> int:
        return len(self.get(cid))

    def leq(self, low: str, high: str) -> bool:
        self.get(low)
        self.get(high)
        return low == high or (low, high) in self.order

    def refinement(self, low: str, high: str) -> Refinement:
        if low == high:
            return identity_refinement(type_of(self.get(low).system))
        if (low, high) not in self.order:
            raise NotComparableError(f"{low} is not below {high}")
        return self.order[(low, high)]

    def restriction_map(self, low: str, high: str) -> tuple[int, ...]:
        """Coarse-graining map Spec(high) -> Spec(low) as a 1-based tuple."""
        return self.refinement(low, high).mapping

    def neighbor_count(self, cid: str) -> int:
        return self._neighbors[cid]

    def maximal_ids(self) -> list[str]:
        uppers = {low for (low, _high) in self.order}
        return [cid for cid in self.contexts if cid not in uppers]

    def below(self, high: str) -> list[str]:
        return [low for (low, h) in self.order if h == high]


def _register(contexts: dict[str, Context], ctx: Context):
    if ctx.id not in contexts:
        contexts[ctx.id] = ctx


def build_poset(families, tol: Tolerance = DEFAULT_TOL) -> ContextPoset:
    """Assemble the poset of the given commuting families: one context per
    family, all pairwise meets, and the bottom context."""
    if not families:
        raise ValidationError("need at least one observable family")
    generated = [generate_context(f, tol) for f in families]
    n = generated[0].dim
    if any(c.dim != n for c in generated):
        raise DimMismatchError("families must share one dimension")

    contexts: dict[str, Context] = {}
    bottom = bottom_context(n)
    _register(contexts, bottom)
    for c in generated:
        _register(contexts, c)
    principal = [contexts[c.id] for c in generated]
    for i in range(len(principal)):
        for j in range(i + 1, len(principal)):
            meet = make_context(meet_system(principal[i].system, principal[j].system, tol))
            _register(contexts, meet)

    order: dict[tuple[str, str], Refinement] = {}
    ids = list(contexts)
    for low in ids:
        for high in ids:
            if low == high:
                continue
            r = find_refinement(contexts[low].system, contexts[high].system, tol)
            if r is not None:
                order[(low, high)] = r
    return ContextPoset(n, contexts, order, bottom.id)


def context_to_json(c: Context) -> dict:
    return {"id": c.id, "system": system_to_json(c.system)}


def poset_to_json(p: ContextPoset) -> dict:
    return {
        "dim": p.dim,
        "contexts": [context_to_json(c) for c in p.contexts.values()],
        "order": [
            {"low": low, "high": high, "refinement": refinement_to_json(r)}
            for (low, high), r in p.order.items()
        ],
    }


def poset_from_json(obj, tol: Tolerance = DEFAULT_TOL) -> ContextPoset:
    """Rebuild a poset, re-deriving ids and checking stored witnesses."""
    if not isinstance(obj, dict) or "dim" not in obj or "contexts" not in obj or "order" not in obj:
        raise ValidationError("poset JSON must have 'dim', 'contexts' and 'order' fields")
    contexts: dict[str, Context] = {}
    for centry in obj["contexts"]:
        ctx = make_context(system_from_json(centry["system"], tol))
        if ctx.id != centry.get("id"):
            raise ValidationError(f"context id {centry.get('id')!r} does not match its system")
        if ctx.dim != obj["dim"]:
            raise DimMismatchError("context dimension does not match poset dimension")
        _register(contexts, ctx)
    order: dict[tuple[str, str], Refinement] = {}
    bottom_id = None
    for oentry in obj["order"]:
        low, high = oentry["low"], oentry["high"]
        if low not in contexts or high not in contexts:
            raise ValidationError(f"order pair ({low!r}, {high!r}) references unknown contexts")
        r = refinement_from_json(oentry["refinement"])
        got = coarsen(contexts[high].system, r, tol)
        want = contexts[low].system
        if len(got) != len(want) or any(
            float(np.linalg.norm(a - b)) > tol.eps
            for a, b in zip(got.projectors, want.projectors)
        ):
            raise ValidationError(f"stored refinement for ({low!r}, {high!r}) does not coarsen correctly")
        order[(low, high)] = r
    for cid, ctx in contexts.items():
        if len(ctx) == 1:
            bottom_id = cid
            break
    if bottom_id is None:
        raise ValidationError("poset JSON lacks the bottom context")
    return ContextPoset(obj["dim"], contexts, order, bottom_id)
