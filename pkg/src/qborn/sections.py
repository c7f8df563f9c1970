"""Global-section search over a finite context poset.

A section picks one spectrum point per context so that every restriction
map sends the finer choice to the coarser one. Restriction maps are
functions from fine to coarse, so choices at the maximal contexts force
everything below them; the search branches on maximal contexts only
(most-constrained-first) and propagates downward, backtracking on
conflict. Nonexistence on suitable posets in dimension three and up is
the Kochen-Specker obstruction; dimension two always admits sections.
"""

from __future__ import annotations

from dataclasses import dataclass

from qborn.errors import MissingAssignmentError, ValidationError
from qborn.poset import ContextPoset


@dataclass(frozen=True)
class Section:
    """One spectrum point per context id, 1-based."""

    assignment: dict[str, int]

    def point(self, cid: str) -> int:
        if cid not in self.assignment:
            raise MissingAssignmentError(f"no point assigned to context {cid!r}")
        return self.assignment[cid]


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one search: 'found' or 'none', plus effort statistics."""

    outcome: str
    nodes: int
    section: Section | None
    count: int | None = None
    capped: bool = False


def _branch_order(poset: ContextPoset) -> list[str]:
    return sorted(poset.maximal_ids(), key=lambda cid: (-poset.neighbor_count(cid), cid))


def _search(poset: ContextPoset, cap: int | None, collect_first: bool):
    """Backtracking core. Returns (first section or None, count, nodes, capped).

    With ``cap`` set, counts completed sections up to the cap; otherwise
    stops at the first one when ``collect_first``.
    """
    maximals = _branch_order(poset)
    below = {
        m: [(low, poset.restriction_map(low, m)) for low in poset.below(m)]
        for m in maximals
    }
    sizes = {m: poset.spectrum_size(m) for m in maximals}
    assignment: dict[str, int] = {}
    found: list[Section | None] = [None]
    state = {"nodes": 0, "count": 0, "capped": False}

    def descend(k: int) -> bool:
        # Returns True to stop the whole search.
        if k == len(maximals):
            state["count"] += 1
            if found[0] is None:
                found[0] = Section(dict(assignment))
            if collect_first and cap is None:
                return True
            if cap is not None and state["count"] >= cap:
                state["capped"] = True
                return True
            return False
        m = maximals[k]
        for x in range(1, sizes[m] + 1):
            state["nodes"] += 1
            trail = [m]
            assignment[m] = x
            ok = True
            for low, mapping in below[m]:
                implied = mapping[x - 1]
                if low in assignment:
                    if assignment[low] != implied:
                        ok = False
                        break
                else:
                    assignment[low] = implied
                    trail.append(low)
            if ok and descend(k + 1):
                return True
            for cid in trail:
                del assignment[cid]
        return False

    descend(0)
    return found[0], state["count"], state["nodes"], state["capped"]


def find_global_section(poset: ContextPoset) -> Section | None:
    """First section in deterministic branch order, or None if none exists."""
    section, _count, _nodes, _capped = _search(poset, cap=None, collect_first=True)
    return section


def search_global_section(poset: ContextPoset) -> SearchReport:
    section, _count, nodes, _capped = _search(poset, cap=None, collect_first=True)
    outcome = "found" if section is not None else "none"
    return SearchReport(outcome, nodes, section)


def count_global_sections(poset: ContextPoset, cap: int) -> int:
    """Number of distinct sections, early-exiting once the cap is reached."""
    if cap < 1:
        raise ValidationError("cap must be a positive integer")
    _section, count, _nodes, _capped = _search(poset, cap=cap, collect_first=False)
    return count


def count_report(poset: ContextPoset, cap: int) -> SearchReport:
    if cap < 1:
        raise ValidationError("cap must be a positive integer")
    section, count, nodes, capped = _search(poset, cap=cap, collect_first=False)
    outcome = "found" if section is not None else "none"
    return SearchReport(outcome, nodes, section, count=count, capped=capped)


def check_section(poset: ContextPoset, s: Section) -> bool:
    """Exact verification of every compatibility constraint."""
    for cid in poset.ids():
        x = s.point(cid)
        if not 1 <= x <= poset.spectrum_size(cid):
            return False
    for (low, high) in poset.order:
        mapping = poset.restriction_map(low, high)
        if s.assignment[low] != mapping[s.assignment[high] - 1]:
            return False
    return True


def section_to_json(s: Section) -> dict:
    return {"assignment": dict(sorted(s.assignment.items()))}


def section_from_json(obj) -> Section:
    if not isinstance(obj, dict) or "assignment" not in obj:
        raise ValidationError("section JSON must have an 'assignment' field")
    return Section({str(k): int(v) for k, v in obj["assignment"].items()})


def report_to_json(r: SearchReport) -> dict:
    out: dict = {"outcome": r.outcome, "nodes": r.nodes}
    if r.section is not None:
        out["section"] = section_to_json(r.section)
    if r.count is not None:
        out["count"] = r.count
        out["capped"] = r.capped
    return out
