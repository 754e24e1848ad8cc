"""Exact brute-force oracle for deletion problems, plus minimal-witness extraction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DEFAULT_CAPS, Caps, ResourceError
from .graph import DeletionInstance, Graph, iter_bits, to_mask
from .obstructions.properties import PropertySpec


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    solution: frozenset[int] | None = None
    optimum: int | None = None
    checked: int = 0

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "solution": None if self.solution is None else sorted(self.solution),
            "optimum": self.optimum,
        }


def _check_caps(g: Graph, budget: int, caps: Caps) -> None:
    if g.n > caps.max_vertices:
        raise ResourceError(f"{g.n} vertices exceed the solver cap of {caps.max_vertices}")
    if budget > caps.max_budget:
        raise ResourceError(f"budget {budget} exceeds the solver cap of {caps.max_budget}")


def _shrink(g: Graph, p: PropertySpec, witness: int) -> int:
    """Drop vertices from a witness while it still holds an obstruction."""
    for v in iter_bits(witness):
        smaller = witness & ~(1 << v)
        if p.contains(g, smaller):
            witness = smaller
    return witness


class _Search:
    """Lexicographic enumeration of deletion sets of one size, pruned by known witnesses.

    Every deletion set must hit every witness found so far.  A prefix is
    dropped when some unhit witness lies entirely before the next candidate
    vertex, or when the unhit witnesses contain more disjoint members than
    there are slots left.
    """

    def __init__(self, g: Graph, p: PropertySpec, prune: bool):
        self.g = g
        self.p = p
        self.prune = prune
        self.witnesses: list[int] = []
        self.checked = 0

    def feasible(self, deleted: int) -> bool:
        self.checked += 1
        if self.prune and any(not w & deleted for w in self.witnesses):
            return False
        found = self.p.witness(self.g, self.g.vertex_mask & ~deleted)
        if found is None:
            return True
        if self.prune:
            self.witnesses.append(_shrink(self.g, self.p, to_mask(found)))
        return False

    def _blocked(self, chosen: int, start: int, slots: int) -> bool:
        later = ~((1 << start) - 1)
        used = 0
        packed = 0
        for w in self.witnesses:
            if w & chosen:
                continue
            if not w & later:
                return True
            if not w & used:
                used |= w & later
                packed += 1
                if packed > slots:
                    return True
        return False

    def first_of_size(self, size: int) -> int | None:
        n = self.g.n

        def rec(chosen: int, start: int, left: int) -> int | None:
            if left == 0:
                return chosen if self.feasible(chosen) else None
            if self.prune and self._blocked(chosen, start, left):
                return None
            for v in range(start, n - left + 1):
                found = rec(chosen | (1 << v), v + 1, left - 1)
                if found is not None:
                    return found
            return None

        return rec(0, 0, size)


def brute_force_decide(
    inst: DeletionInstance,
    p: PropertySpec,
    caps: Caps = DEFAULT_CAPS,
    optimum: bool = False,
    exhaustive: bool = False,
) -> SolveResult:
    """Decide whether deleting at most k vertices leaves no obstruction.

    Sizes are tried from 0 upward and sets of one size lexicographically, so
    the returned solution is the lexicographically first of minimum size.
    With ``optimum`` the search continues past k to report the true minimum.
    ``exhaustive`` disables witness pruning for audits.
    """
    g, k = inst.graph, inst.budget
    _check_caps(g, k, caps)
    search = _Search(g, p, prune=not exhaustive)
    limit = g.n if optimum else k
    for size in range(limit + 1):
        found = search.first_of_size(size)
        if found is not None:
            sol = frozenset(iter_bits(found))
            return SolveResult(
                size <= k, sol if size <= k else None, size if optimum else None, search.checked
            )
    return SolveResult(False, None, None, search.checked)


def min_witness(
    g: Graph,
    p: PropertySpec,
    prefer_inside: Iterable[int] = (),
    caps: Caps = DEFAULT_CAPS,
) -> frozenset[int] | None:
    """A vertex-minimal obstruction, fewest vertices outside ``prefer_inside`` first.

    Ties are broken by size, then lexicographically.  Any proper subset of
    the answer would sort strictly earlier, so the first hit is minimal.
    """
    if g.n > caps.max_vertices:
        raise ResourceError(f"{g.n} vertices exceed the solver cap of {caps.max_vertices}")
    if not p.contains(g):
        return None
    inside_mask = to_mask(prefer_inside) & g.vertex_mask
    inside = list(iter_bits(inside_mask))
    outside = [v for v in range(g.n) if not (inside_mask >> v) & 1]

    for o in range(len(outside) + 1):
        # Only outside sets that leave an obstruction together with all of inside can work.
        viable = [to_mask(s) for s in combinations(outside, o) if p.contains(g, inside_mask | to_mask(s))]
        if not viable:
            continue
        for extra in range(len(inside) + 1):
            hits = []
            for om in viable:
                for s in combinations(inside, extra):
                    mask = om | to_mask(s)
                    if p.contains(g, mask):
                        hits.append(tuple(iter_bits(mask)))
            if hits:
                best = frozenset(min(hits))
                _assert_minimal(g, p, best)
                return best
    raise AssertionError("g holds an obstruction but no subset does")


def _assert_minimal(g: Graph, p: PropertySpec, witness: frozenset[int]) -> None:
    mask = to_mask(witness)
    if not p.contains(g, mask) or any(p.contains(g, mask & ~(1 << v)) for v in witness):
        raise AssertionError(f"witness {sorted(witness)} is not vertex-minimal")


def local_search_confirm(
    inst: DeletionInstance,
    p: PropertySpec,
    seed: int = 0,
    restarts: int = 200,
) -> frozenset[int] | None:
    """Randomized witness-hitting search; returns a solution or None (inconclusive)."""
    rng = random.Random(seed)
    g, k = inst.graph, inst.budget
    for _ in range(restarts):
        deleted = 0
        while True:
            found = p.witness(g, g.vertex_mask & ~deleted)
            if found is None:
                return frozenset(iter_bits(deleted))
            if bin(deleted).count("1") >= k:
                break
            deleted |= 1 << rng.choice(sorted(found))
    return None
