"""Direct test of the rank-c replacement property on one instance."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..errors import DEFAULT_CAPS, PreconditionError, ResourceError
from ..graph import Graph, to_mask, verify_vertex_cover
from ..incidence import check_sum, enumerate_coords
from .properties import PropertySpec

PREMISE_FAILED = "premise-failed"
REPLACED = "replaced"
COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class RankVerdict:
    status: str
    replacement: frozenset[int] | None = None
    reason: str = ""
    candidates_checked: int = 0

    @property
    def premise_holds(self) -> bool:
        return self.status != PREMISE_FAILED

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "replacement": None if self.replacement is None else sorted(self.replacement),
            "reason": self.reason,
            "candidates_checked": self.candidates_checked,
        }


def check_rank_c(
    p: PropertySpec,
    c: int,
    h: Graph,
    x: Iterable[int],
    d: Iterable[int],
    v: int,
    singleton_only: bool = True,
    subset_cap: int | None = DEFAULT_CAPS.max_subset,
    candidate_budget: int = 1_000_000,
    coord_cap: int | None = None,
) -> RankVerdict:
    """Look for ``D' ⊆ d`` with ``h - v - (d - D')`` in ``p``.

    Candidates are tried by increasing size, then lexicographically, so the
    singleton search is a prefix of the subset search.  Singleton mode tries
    only sets of size one.  Subset mode refuses ``|d| > subset_cap`` and
    stops with a ResourceError after ``candidate_budget`` candidates.
    """
    x, d = frozenset(x), frozenset(d)
    if any(not 0 <= u < h.n for u in x | d | {v}):
        raise PreconditionError("vertex out of range")
    if not verify_vertex_cover(h, x):
        raise PreconditionError("x is not a vertex cover of h")
    if x & d:
        raise PreconditionError("d must be disjoint from x")
    if v in x or v in d:
        raise PreconditionError("v must lie outside d and x")

    everything = h.vertex_mask
    dmask = to_mask(d)
    if not p.contains(h, everything & ~dmask):
        return RankVerdict(PREMISE_FAILED, reason="h - d has no obstruction")
    idx = enumerate_coords(x, c, cap=coord_cap)
    if not check_sum(h, idx, v, d):
        return RankVerdict(PREMISE_FAILED, reason="vectors of d do not sum to v's")

    base = everything & ~(1 << v) & ~dmask
    if not p.contains(h, everything & ~(1 << v)):
        # Every candidate graph is an induced subgraph of h - v.
        return RankVerdict(COUNTEREXAMPLE, reason="h - v has no obstruction")
    if p.contains(h, base):
        # v is not needed; adding any part of d back keeps the obstruction.
        return RankVerdict(REPLACED, frozenset([min(d)]) if singleton_only else frozenset(),
                           reason="h - v - d already has an obstruction")

    order = sorted(d)
    if singleton_only:
        for i, u in enumerate(order, 1):
            if p.contains(h, base | (1 << u)):
                return RankVerdict(REPLACED, frozenset([u]), candidates_checked=i)
        return RankVerdict(COUNTEREXAMPLE, reason="no single vertex of d replaces v",
                           candidates_checked=len(order))

    if subset_cap is not None and len(order) > subset_cap:
        raise ResourceError(f"|d| = {len(order)} exceeds the subset cap of {subset_cap}")
    checked = 1  # the empty set, handled above
    for size in range(1, len(order) + 1):
        for combo in combinations(order, size):
            checked += 1
            if checked > candidate_budget:
                raise ResourceError(f"subset search exceeded {candidate_budget} candidates")
            if p.contains(h, base | to_mask(combo)):
                return RankVerdict(REPLACED, frozenset(combo), candidates_checked=checked)
    return RankVerdict(COUNTEREXAMPLE, reason="no subset of d replaces v", candidates_checked=checked)
