from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import SubsetOracle
from rankkernel.errors import PreconditionError
from rankkernel.graph import Graph
from rankkernel.obstructions import even_hole_from_path, is_hole_sequence, odd_hole_from_path
from rankkernel.obstructions.paths import seen_edges, seen_vertices


def path_plus(n: int, seen: set[int]) -> Graph:
    """Induced path 0..n-1 plus y = n adjacent to ``seen`` (0-based positions)."""
    edges = [(i, i + 1) for i in range(n - 1)] + [(n, i) for i in seen]
    return Graph.from_edges(n + 1, edges)


def assert_hole(g: Graph, found: frozenset[int], parity: int) -> None:
    assert len(found) % 2 == parity and len(found) >= 4
    sub, _ = g.induced_subgraph(found)
    assert SubsetOracle(sub).hole("odd" if parity else "even", 4)
    # The set itself is a single chordless cycle: every vertex has degree two.
    assert all(sub.degree(v) == 2 for v in range(sub.n))


def test_odd_base_case():
    g = path_plus(4, {0, 3})
    assert odd_hole_from_path(g, range(4), 4) == frozenset(range(5))


def test_odd_shrinks_to_inner_path():
    # p, v1..v4, q = 0..5; y sees p, v1, v4, q.
    g = path_plus(6, {0, 1, 4, 5})
    assert odd_hole_from_path(g, range(6), 6) == frozenset({1, 2, 3, 4, 6})


def test_even_base_case():
    g = path_plus(3, {0, 2})
    assert even_hole_from_path(g, range(3), 3) == frozenset({0, 1, 2, 3})


def test_even_order_five_two_inner_neighbours():
    g = path_plus(5, {0, 1, 3, 4})
    found = even_hole_from_path(g, range(5), 5)
    assert found == frozenset({1, 2, 3, 5})
    assert_hole(g, found, 0)


def test_preconditions():
    with pytest.raises(PreconditionError):
        odd_hole_from_path(path_plus(4, {0, 1, 3}), range(4), 4)  # odd number of edges seen
    with pytest.raises(PreconditionError):
        odd_hole_from_path(path_plus(5, {0, 4}), range(5), 5)  # odd order
    with pytest.raises(PreconditionError):
        odd_hole_from_path(path_plus(4, {0}), range(4), 4)  # misses an end
    with pytest.raises(PreconditionError):
        even_hole_from_path(path_plus(3, {0, 1, 2}), range(3), 3)  # odd number of vertices seen
    with pytest.raises(PreconditionError):
        even_hole_from_path(path_plus(4, {0, 3}), range(4), 4)  # even order
    chord = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 2), (4, 0), (4, 3)])
    with pytest.raises(PreconditionError):
        odd_hole_from_path(chord, range(4), 4)  # not induced
    with pytest.raises(PreconditionError):
        even_hole_from_path(path_plus(3, {0, 2}), range(3), 1)  # y on the path


@pytest.mark.parametrize("n", [4, 6, 8])
def test_odd_lemma_exhaustive(n):
    checked = 0
    for pattern in range(1 << (n - 2)):
        seen = {0, n - 1} | {i + 1 for i in range(n - 2) if pattern >> i & 1}
        g = path_plus(n, seen)
        if seen_edges(g, range(n), n) % 2:
            continue
        assert_hole(g, odd_hole_from_path(g, range(n), n), 1)
        checked += 1
    # Number of inner patterns with an even count of seen edges.
    assert checked == {4: 1, 6: 6, 8: 28}[n]


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_even_lemma_exhaustive(n):
    checked = 0
    for pattern in range(1 << (n - 2)):
        seen = {0, n - 1} | {i + 1 for i in range(n - 2) if pattern >> i & 1}
        g = path_plus(n, seen)
        if seen_vertices(g, range(n), n) % 2:
            continue
        assert_hole(g, even_hole_from_path(g, range(n), n), 0)
        checked += 1
    assert checked == 1 << (n - 3)


@given(st.integers(2, 6).map(lambda h: 2 * h), st.data())
def test_odd_lemma_on_relabelled_paths(n, data):
    # Embed the path under a random permutation with extra isolated noise.
    order = data.draw(st.permutations(range(n + 3)))
    path, y = order[:n], order[n]
    inner = data.draw(st.sets(st.integers(1, n - 2)))
    seen = {path[0], path[-1]} | {path[i] for i in inner}
    edges = list(zip(path, path[1:])) + [(y, v) for v in seen]
    g = Graph.from_edges(n + 3, edges)
    if seen_edges(g, path, y) % 2:
        with pytest.raises(PreconditionError):
            odd_hole_from_path(g, path, y)
        return
    found = odd_hole_from_path(g, path, y)
    assert y in found and found <= set(path) | {y}
    cycle = sorted(found)
    sub, _ = g.induced_subgraph(cycle)
    assert all(sub.degree(v) == 2 for v in range(sub.n)) and len(found) % 2 == 1


def test_is_hole_sequence():
    assert is_hole_sequence(Graph.cycle(5), [0, 1, 2, 3, 4])
    assert not is_hole_sequence(Graph.cycle(5), [0, 2, 1, 3, 4])
    assert not is_hole_sequence(Graph.complete(3), [0, 1, 2])
