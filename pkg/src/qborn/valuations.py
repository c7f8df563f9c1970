"""Finitely supported valuations on finite discrete point sets.

A valuation assigns a nonnegative weight to each point; totals need not be
one. ``dirac``, ``pushforward`` and ``bind`` make this a monad on finite
sets, ``product`` is the independent pairing, and ``normalize`` lands in
probability valuations when the total mass is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

from qborn.errors import (
    TargetMismatchError,
    UnknownPointError,
    ValidationError,
    ZeroMassError,
)


@dataclass(frozen=True)
class FiniteValuation:
    """Weights over an ordered finite point set.

    Points are hashable labels (ints in spectra, but anything hashable is
    accepted). Order of ``points`` is part of the value and is preserved by
    every operation.
    """

    points: tuple
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ValidationError("points and weights must have equal length")
        if len(set(self.points)) != len(self.points):
            raise ValidationError("points must be distinct")
        ws = []
        for w in self.weights:
            w = float(w)
            if not math.isfinite(w):
                raise ValidationError("weights must be finite")
            if w < 0.0:
                raise ValidationError(f"weights must be nonnegative, got {w}")
            ws.append(w)
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "weights", tuple(ws))

    @property
    def total(self) -> float:
        return float(sum(self.weights))

    def weight(self, point) -> float:
        for p, w in zip(self.points, self.weights):
            if p == point:
                return w
        raise UnknownPointError(f"point {point!r} not in the carrier")

    def as_dict(self) -> dict:
        return dict(zip(self.points, self.weights))

    def isclose(self, other: "FiniteValuation", atol: float = 1e-12) -> bool:
        """Equality as measures: same weight on every point of either
        carrier, missing points counting as zero."""
        for p in set(self.points) | set(other.points):
            a = self.as_dict().get(p, 0.0)
            b = other.as_dict().get(p, 0.0)
            if abs(a - b) > atol:
                return False
        return True


@dataclass(frozen=True)
class ProbabilityValuation(FiniteValuation):
    """A valuation whose total mass is one (within 1e-12)."""

    def __post_init__(self):
        super().__post_init__()
        if abs(self.total - 1.0) > 1e-12:
            raise ValidationError(f"total mass must be 1, got {self.total!r}")


def measure(v: FiniteValuation, subset) -> float:
    """Mass of a subset of the carrier."""
    seen = set()
    acc = 0.0
    table = v.as_dict()
    for p in subset:
        if p in seen:
            continue
        seen.add(p)
        if p not in table:
            raise UnknownPointError(f"point {p!r} not in the carrier")
        acc += table[p]
    return acc


def dirac(point, carrier) -> FiniteValuation:
    """Unit mass at one point of the carrier."""
    carrier = tuple(carrier)
    if point not in carrier:
        raise UnknownPointError(f"point {point!r} not in the carrier")
    return FiniteValuation(carrier, tuple(1.0 if p == point else 0.0 for p in carrier))


def pushforward(v: FiniteValuation, f, target_points=None) -> FiniteValuation:
    """Image valuation under f: weight of q is the sum over f(p) == q.

    Without ``target_points`` the carrier is the f-image in first-hit
    order; with it, every image point must belong to the given carrier.
    """
    if target_points is None:
        target = []
        for p in v.points:
            q = f(p)
            if q not in target:
                target.append(q)
        target = tuple(target)
    else:
        target = tuple(target_points)
        if len(set(target)) != len(target):
            raise ValidationError("target points must be distinct")
    acc = {q: 0.0 for q in target}
    for p, w in zip(v.points, v.weights):
        q = f(p)
        if q not in acc:
            raise TargetMismatchError(f"f({p!r}) = {q!r} is outside the target carrier")
        acc[q] += w
    return FiniteValuation(target, tuple(acc[q] for q in target))


def bind(v: FiniteValuation, kernel, target_points) -> FiniteValuation:
    """Kleisli extension: mix the kernel valuations with weights from v.

    ``kernel(p)`` must be a valuation on exactly ``target_points``.
    """
    target = tuple(target_points)
    if len(set(target)) != len(target):
        raise ValidationError("target points must be distinct")
    acc = {q: 0.0 for q in target}
    for p, w in zip(v.points, v.weights):
        kv = kernel(p)
        if tuple(kv.points) != target:
            raise TargetMismatchError(f"kernel at {p!r} lives on {kv.points!r}, expected {target!r}")
        for q, u in zip(kv.points, kv.weights):
            acc[q] += w * u
    return FiniteValuation(target, tuple(acc[q] for q in target))


def product(v: FiniteValuation, w: FiniteValuation) -> FiniteValuation:
    """Independent pairing on the row-major product carrier."""
    pts = tuple((p, q) for p in v.points for q in w.points)
    wts = tuple(a * b for a in v.weights for b in w.weights)
    return FiniteValuation(pts, wts)


def normalize(v: FiniteValuation) -> ProbabilityValuation:
    t = v.total
    if t <= 0.0:
        raise ZeroMassError("cannot normalize a valuation of zero mass")
    return ProbabilityValuation(v.points, tuple(w / t for w in v.weights))


def modular_check(v: FiniteValuation, subset_a, subset_b, atol: float = 1e-12) -> bool:
    """mass(A) + mass(B) == mass(A or B) + mass(A and B)."""
    a = set(subset_a)
    b = set(subset_b)
    lhs = measure(v, a) + measure(v, b)
    rhs = measure(v, a | b) + measure(v, a & b)
    return abs(lhs - rhs) <= atol


def valuation_to_json(v: FiniteValuation) -> dict:
    # Tuple labels (product carriers) serialize as JSON arrays.
    return {
        "points": [list(p) if isinstance(p, tuple) else p for p in v.points],
        "weights": list(v.weights),
    }


def valuation_from_json(obj) -> FiniteValuation:
    if not isinstance(obj, dict) or "points" not in obj or "weights" not in obj:
        raise ValidationError("valuation JSON must have 'points' and 'weights' fields")
    pts = tuple(tuple(p) if isinstance(p, list) else p for p in obj["points"])
    return FiniteValuation(pts, tuple(float(w) for w in obj["weights"]))
