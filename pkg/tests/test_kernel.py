from __future__ import annotations

import ast
import pathlib

import pytest
from hypothesis import given
from hypothesis import strategies as st

import rankkernel
from conftest import covered_graphs
from oracles import naive_contains, naive_deletion_feasible
from rankkernel.errors import PreconditionError
from rankkernel.graph import DeletionInstance, Graph, VertexCoverCert, random_planted_instance
from rankkernel.incidence import coordinate_count
from rankkernel.kernel import PRESETS, TRIVIAL_YES, ProblemPreset, get_preset, kernelize, reduce


def test_reduce_keeps_independent_vectors():
    # Three non-cover vertices with distinct neighbourhoods in X = {0, 1}.
    g = Graph.from_edges(5, [(0, 2), (1, 3), (0, 4), (1, 4)])
    out, id_map, trace = reduce(g, {0, 1}, 1, 2)
    assert out == g and id_map == {v: v for v in range(5)}
    assert trace.removed == ()


def test_reduce_drops_duplicate_at_one_round():
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    out, id_map, trace = reduce(g, {0}, 1, 1)
    assert out.n == 2 and sorted(id_map) == [0, 1]
    assert trace.removed == (2,)
    assert trace.rounds[0].kept == (1,) and trace.rounds[0].rank == 1


def test_reduce_second_round_keeps_duplicate():
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    out, _, trace = reduce(g, {0}, 2, 1)
    assert out == g
    assert [r.kept for r in trace.rounds] == [(1,), (2,)]


def test_reduce_rejects_bad_input():
    with pytest.raises(PreconditionError):
        reduce(Graph.path(3), {0}, 1, 1)
    with pytest.raises(PreconditionError):
        reduce(Graph.path(3), {1}, 0, 1)
    with pytest.raises(PreconditionError):
        reduce(Graph.path(3), {1}, 1, 0)


@given(covered_graphs(max_cover=4, max_independent=12), st.integers(1, 3), st.integers(1, 3))
def test_reduce_properties(gx, ell, c):
    g, x = gx
    out, id_map, trace = reduce(g, x, ell, c)
    assert out.n <= len(x) + ell * coordinate_count(len(x), c) == trace.bound
    assert x <= set(id_map)
    # The output is the induced subgraph on the kept ids.
    for u, a in id_map.items():
        for v, b in id_map.items():
            if u != v:
                assert out.has_edge(a, b) == g.has_edge(u, v)
    # Each round keeps a basis, so its size is its rank.
    for r in trace.rounds:
        assert len(r.kept) == r.rank <= trace.dimension
    # Idempotence: reducing the output again changes nothing.
    cover2 = {id_map[v] for v in x}
    again, _, _ = reduce(out, cover2, ell, c)
    assert again == out


@given(covered_graphs(max_cover=3, max_independent=10), st.integers(1, 3))
def test_reduce_is_prefix_stable(gx, ell):
    g, x = gx
    _, short, _ = reduce(g, x, ell, 2)
    _, long, _ = reduce(g, x, ell + 1, 2)
    assert set(short) <= set(long)


def test_presets_table():
    table = {name: (p.rank, p.p(3), p.property_id, p.singleton) for name, p in PRESETS.items()}
    assert table == {
        "perfect": (4, 6, "perfect", True),
        "even-hole-free": (3, 6, "even-hole", True),
        "at-free": (8, 19, "at", True),
        "interval": (8, 19, "interval", False),
        "wheel-free": (4, 6, "wheel", False),
    }
    assert get_preset("perfect") is PRESETS["perfect"]
    with pytest.raises(PreconditionError):
        get_preset("planar")
    with pytest.raises(PreconditionError):
        ProblemPreset("bad", 0, (1,), "odd-hole", True)
    with pytest.raises(PreconditionError):
        ProblemPreset("bad", 2, (1, -1), "odd-hole", True)


def test_preset_vertex_bound():
    p = PRESETS["even-hole-free"]
    assert p.rounds(2, 1) == 1 + 1 + 4
    assert p.vertex_bound(2, 1) == 2 + 6 * coordinate_count(2, 3)


def test_kernelize_trivial_when_budget_covers_x():
    inst = random_planted_instance(3, 5, 0.6, 3, seed=4)
    k = kernelize(inst, "perfect")
    assert k.trivial and k.instance == TRIVIAL_YES


def test_kernelize_keeps_free_instance_free():
    # A path graph is perfect; the kernel is an induced subgraph, hence also perfect.
    g = Graph.path(7)
    inst = DeletionInstance(g, VertexCoverCert({1, 3, 5}), 0)
    k = kernelize(inst, "perfect")
    assert naive_deletion_feasible(k.instance.graph, 0, lambda h: naive_contains(h, "perfect"))
    assert k.instance.budget == 0


def test_kernelize_preserves_answer_even_hole():
    for seed in range(20):
        inst = random_planted_instance(3, 6, 0.5, 1, seed=seed)
        k = kernelize(inst, "even-hole-free")
        has = lambda h: naive_contains(h, "even-hole")  # noqa: E731
        want = naive_deletion_feasible(inst.graph, inst.budget, has)
        got = naive_deletion_feasible(k.instance.graph, k.instance.budget, has)
        assert want == got
        assert k.instance.graph.n <= PRESETS["even-hole-free"].vertex_bound(3, 1)


def test_kernelize_rejects_invalid_cover():
    inst = DeletionInstance.__new__(DeletionInstance)
    object.__setattr__(inst, "graph", Graph.path(3))
    object.__setattr__(inst, "cover", VertexCoverCert({0}))
    object.__setattr__(inst, "budget", 0)
    with pytest.raises(PreconditionError):
        kernelize(inst, "perfect")


def test_kernel_module_does_not_import_detectors():
    source = pathlib.Path(rankkernel.__file__).with_name("kernel.py").read_text()
    imported = set()
    for node in ast.walk(ast.parse(source)):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
        elif isinstance(node, ast.Import):
            imported.update(a.name for a in node.names)
    assert not any("obstructions" in m or "solver" in m for m in imported)
