from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from oracles import min_vertex_cover_size
from rankkernel.errors import ParseError, PreconditionError
from rankkernel.graph import (
    DeletionInstance,
    Graph,
    VertexCoverCert,
    approx_vertex_cover,
    complement,
    format_graph,
    format_instance,
    induced_subgraph,
    parse_cover,
    parse_graph,
    parse_instance,
    random_planted_instance,
    verify_vertex_cover,
)


def test_parse_path():
    g = parse_graph("p 3 2\ne 0 1\ne 1 2\n")
    assert g == Graph.path(3)


def test_parse_isolated_vertex():
    g = parse_graph("p 1 0\n")
    assert g.n == 1 and g.edge_count() == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("p 3 1\ne 0 0\n", 2),
        ("p 3 1\ne 0 3\n", 2),
        ("e 0 1\n", 1),
        ("p 3 1\np 3 1\n", 2),
        ("p 2 1\ne 0 x\n", 2),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_edge_count_mismatch():
    with pytest.raises(ParseError):
        parse_graph("p 3 2\ne 0 1\n")


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a triangle\n\np 3 3\ne 0 1\n# middle\ne 1 2\ne 0 2\n")
    assert g == Graph.complete(3)


def test_instance_roundtrip():
    inst = random_planted_instance(3, 4, 0.5, 2, seed=7)
    again = parse_instance(format_instance(inst))
    assert again == inst


def test_instance_with_empty_cover_roundtrips():
    inst = DeletionInstance(Graph.empty(3), VertexCoverCert(()), 0)
    assert parse_instance(format_instance(inst)) == inst


def test_instance_rejects_non_cover():
    with pytest.raises(ParseError):
        parse_instance("p 2 1\ne 0 1\nx\nk 0\n")


def test_instance_needs_budget():
    with pytest.raises(ParseError):
        parse_instance("p 2 1\ne 0 1\nx 0\n")


def test_parse_cover():
    assert parse_cover("3 1 2").cover == frozenset({1, 2, 3})
    with pytest.raises(ParseError):
        parse_cover("1 a")


def test_graph_validation():
    with pytest.raises(PreconditionError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(PreconditionError):
        Graph(1, [0b1])  # self-loop
    with pytest.raises(PreconditionError):
        Graph.from_edges(2, [(0, 2)])


def test_complement_examples():
    c5 = Graph.cycle(5)
    comp = complement(c5)
    # C_5 is self-complementary via 0 -> 0, 1 -> 2, 2 -> 4, 3 -> 1, 4 -> 3.
    relabel = {0: 0, 1: 2, 2: 4, 3: 1, 4: 3}
    assert all(comp.has_edge(relabel[u], relabel[v]) for u, v in c5.edges())
    assert complement(Graph.empty(4)) == Graph.complete(4)
    p4 = Graph.path(4)
    # The complement of 0-1-2-3 is the path 2-0-3-1.
    assert complement(p4) == Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])


@given(graphs())
def test_complement_is_an_involution(g):
    assert g.complement().complement() == g
    assert g.edge_count() + g.complement().edge_count() == g.n * (g.n - 1) // 2


def test_induced_subgraph_examples():
    c5 = Graph.cycle(5)
    assert induced_subgraph(c5, range(5))[0] == c5
    rim, mapping = induced_subgraph(Graph.wheel(5), range(5))
    assert rim == c5 and mapping == {i: i for i in range(5)}
    assert induced_subgraph(Graph.complete(4), [0, 2, 3])[0] == Graph.complete(3)
    with pytest.raises(PreconditionError):
        induced_subgraph(c5, [7])


@given(graphs(), st.data())
def test_induced_subgraph_keeps_adjacency(g, data):
    keep = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
    sub, mapping = g.induced_subgraph(keep)
    assert sorted(mapping) == sorted(keep)
    for u in keep:
        for v in keep:
            if u != v:
                assert sub.has_edge(mapping[u], mapping[v]) == g.has_edge(u, v)


def test_delete():
    sub, mapping = Graph.cycle(5).delete([0])
    assert sub == Graph.path(4) and mapping == {1: 0, 2: 1, 3: 2, 4: 3}


def test_verify_vertex_cover_examples():
    assert verify_vertex_cover(Graph.cycle(4), {0, 2})
    assert not verify_vertex_cover(Graph.complete(3), {0})
    assert verify_vertex_cover(Graph.empty(3), set())


def test_approx_cover_examples():
    assert approx_vertex_cover(Graph.empty(4)).cover == frozenset()
    assert approx_vertex_cover(Graph.path(2)).cover == frozenset({0, 1})
    assert approx_vertex_cover(Graph.cycle(4)).cover == frozenset(range(4))


@given(graphs(max_n=9))
def test_approx_cover_is_a_two_approximation(g):
    cover = approx_vertex_cover(g).cover
    assert verify_vertex_cover(g, cover)
    assert len(cover) <= 2 * min_vertex_cover_size(g)


def test_planted_instance_examples():
    inst = random_planted_instance(0, 5, 0.7, 0, seed=1)
    assert inst.graph == Graph.empty(5) and len(inst.cover) == 0
    inst = random_planted_instance(3, 4, 1.0, 2, seed=1)
    assert inst.graph.edge_count() == 3 + 3 * 4
    assert all(not inst.graph.has_edge(u, v) for u in range(3, 7) for v in range(u + 1, 7))
    assert random_planted_instance(4, 6, (0.3, 0.6), 1, seed=99) == random_planted_instance(
        4, 6, (0.3, 0.6), 1, seed=99
    )


def test_deletion_instance_validation():
    with pytest.raises(PreconditionError):
        DeletionInstance(Graph.path(3), VertexCoverCert({0}), 0)
    with pytest.raises(PreconditionError):
        DeletionInstance(Graph.path(3), VertexCoverCert({1}), 4)
    with pytest.raises(PreconditionError):
        VertexCoverCert.checked(Graph.path(3), {5})


def test_format_graph_is_canonical():
    assert format_graph(Graph.cycle(3)) == "p 3 3\ne 0 1\ne 0 2\ne 1 2\n"
