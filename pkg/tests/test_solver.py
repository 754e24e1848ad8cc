from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import covered_graphs
from oracles import naive_contains, naive_deletion_feasible
from rankkernel.errors import Caps, ResourceError
from rankkernel.graph import DeletionInstance, Graph, VertexCoverCert, approx_vertex_cover, to_mask
from rankkernel.obstructions import ODD_HOLE, PROPERTIES, WHEEL
from rankkernel.solver import brute_force_decide, local_search_confirm, min_witness


def instance(g: Graph, k: int) -> DeletionInstance:
    return DeletionInstance(g, approx_vertex_cover(g), k)


def test_c5_needs_one_deletion():
    c5 = Graph.cycle(5)
    assert not brute_force_decide(instance(c5, 0), ODD_HOLE).feasible
    res = brute_force_decide(instance(c5, 1), ODD_HOLE)
    assert res.feasible and res.solution == frozenset({0})


def test_k4_wheel():
    res = brute_force_decide(instance(Graph.complete(4), 1), WHEEL)
    assert res.feasible and len(res.solution) == 1
    for v in range(4):
        rest, _ = Graph.complete(4).delete([v])
        assert not WHEEL.contains(rest)


def test_optimum_reports_true_minimum():
    # Two disjoint C_5s need two deletions.
    g = Graph.from_edges(10, [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 5) for i in range(5)])
    res = brute_force_decide(instance(g, 1), ODD_HOLE, optimum=True)
    assert not res.feasible and res.optimum == 2 and res.solution is None
    res = brute_force_decide(instance(g, 3), ODD_HOLE, optimum=True)
    assert res.feasible and res.optimum == 2


def test_caps():
    big = Graph.empty(30)
    with pytest.raises(ResourceError):
        brute_force_decide(instance(big, 0), ODD_HOLE)
    with pytest.raises(ResourceError):
        brute_force_decide(instance(Graph.cycle(8), 4), ODD_HOLE, caps=Caps(max_budget=3))
    with pytest.raises(ResourceError):
        min_witness(big, ODD_HOLE)


def test_min_witness_prefers_smaller_hole():
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 7) for i in range(7)]
    g = Graph.from_edges(12, edges)
    assert min_witness(g, ODD_HOLE) == frozenset(range(5))
    # Preferring the C_7's vertices changes the answer.
    assert min_witness(g, ODD_HOLE, prefer_inside=range(5, 12)) == frozenset(range(5, 12))
    assert min_witness(Graph.path(6), ODD_HOLE) is None


@pytest.mark.parametrize("prop_id", ["odd-hole", "even-hole", "wheel", "almost-wheel", "at", "perfect"])
@settings(max_examples=60)
@given(gx=covered_graphs(max_cover=3, max_independent=5), k=st.integers(0, 3))
def test_decide_matches_naive(prop_id, gx, k):
    g, x = gx
    k = min(k, len(x))
    p = PROPERTIES[prop_id]
    inst = DeletionInstance(g, VertexCoverCert(x), k)
    res = brute_force_decide(inst, p)
    assert res.feasible == naive_deletion_feasible(g, k, lambda h: naive_contains(h, prop_id))
    assert brute_force_decide(inst, p, exhaustive=True).feasible == res.feasible
    if res.feasible:
        assert len(res.solution) <= k
        assert not p.contains(g, g.vertex_mask & ~to_mask(res.solution))


@pytest.mark.parametrize("prop_id", ["odd-hole", "wheel", "interval"])
@settings(max_examples=60)
@given(gx=covered_graphs(max_cover=4, max_independent=6))
def test_monotone_in_budget_and_full_cover_suffices(prop_id, gx):
    g, x = gx
    p = PROPERTIES[prop_id]
    answers = [brute_force_decide(DeletionInstance(g, VertexCoverCert(x), k), p).feasible
               for k in range(len(x) + 1)]
    assert answers == sorted(answers)
    # Deleting the whole cover leaves an edgeless graph.
    assert answers[-1]


@settings(max_examples=60)
@given(gx=covered_graphs(max_cover=4, max_independent=5), k=st.integers(0, 4), seed=st.integers(0, 10**6))
def test_local_search_never_contradicts(gx, k, seed):
    g, x = gx
    k = min(k, len(x))
    inst = DeletionInstance(g, VertexCoverCert(x), k)
    found = local_search_confirm(inst, ODD_HOLE, seed=seed, restarts=20)
    if found is not None:
        assert len(found) <= k and not ODD_HOLE.contains(g, g.vertex_mask & ~to_mask(found))
        assert brute_force_decide(inst, ODD_HOLE).feasible


@pytest.mark.parametrize("prop_id", ["odd-hole", "even-hole", "wheel", "at"])
@settings(max_examples=60)
@given(gx=covered_graphs(max_cover=3, max_independent=5), data=st.data())
def test_min_witness_is_vertex_minimal(prop_id, gx, data):
    g, _ = gx
    p = PROPERTIES[prop_id]
    prefer = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
    w = min_witness(g, p, prefer)
    assert (w is None) == (not p.contains(g))
    if w is not None:
        mask = to_mask(w)
        assert p.contains(g, mask)
        assert not any(p.contains(g, mask & ~(1 << v)) for v in w)
