from __future__ import annotations

from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import gf2_rank
from rankkernel.errors import PreconditionError
from rankkernel.gf2 import BitVec, Gf2Basis

vec = BitVec.from_string


def test_bitvec_arithmetic():
    v = vec("1011")
    assert (v ^ v).is_zero()
    assert v + vec("0110") == vec("1101")
    assert v.weight() == 3 and v[0] == 1 and v[1] == 0
    assert v.to_string() == "1011"
    with pytest.raises(PreconditionError):
        v ^ vec("10")
    with pytest.raises(PreconditionError):
        BitVec(2, 0b100)


def test_insert_examples():
    b = Gf2Basis()
    assert not b.insert(0, BitVec.zero(3)) and b.rank == 0
    b = Gf2Basis()
    assert b.insert(0, vec("10")) and b.insert(1, vec("01")) and b.rank == 2
    b = Gf2Basis()
    assert b.insert(0, vec("101"))
    assert b.insert(1, vec("011"))
    assert not b.insert(2, vec("110"))
    assert b.accepted == [0, 1]


def test_insert_dimension_mismatch():
    b = Gf2Basis()
    b.insert(0, vec("101"))
    with pytest.raises(PreconditionError):
        b.insert(1, vec("10"))
    with pytest.raises(PreconditionError):
        b.represent(vec("10"))


def test_represent_examples():
    b = Gf2Basis()
    b.insert("a", vec("101"))
    b.insert("b", vec("011"))
    assert b.represent(BitVec.zero(3)) == frozenset()
    assert b.represent(vec("110")) == frozenset({"a", "b"})
    c = Gf2Basis()
    c.insert(0, vec("100"))
    assert c.represent(vec("010")) is None


def test_represent_on_empty_basis():
    b = Gf2Basis()
    assert b.represent(BitVec.zero(4)) == frozenset()
    assert b.represent(vec("0100")) is None
    assert b.dim is None


vector_families = st.integers(1, 64).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(0, (1 << d) - 1), max_size=40))
)


@given(vector_families)
def test_rank_matches_independent_elimination(family):
    d, values = family
    b = Gf2Basis(d)
    for i, bits in enumerate(values):
        b.insert(i, BitVec(d, bits))
    rows = [[(bits >> j) & 1 for j in range(d)] for bits in values]
    assert b.rank == gf2_rank(rows)
    assert b.rank <= min(len(values), d)
    pivots = [p for _, _, p in b.rows]
    assert len(set(pivots)) == len(pivots)


@given(vector_families, st.data())
def test_represent_certificates(family, data):
    d, values = family
    b = Gf2Basis(d)
    for i, bits in enumerate(values):
        b.insert(i, BitVec(d, bits))
    # A target inside the span: XOR of a random subfamily.
    pick = data.draw(st.lists(st.booleans(), min_size=len(values), max_size=len(values)))
    target = reduce(lambda a, x: a ^ x, (v for v, keep in zip(values, pick) if keep), 0)
    rep = b.represent(BitVec(d, target))
    assert rep is not None
    assert rep <= set(b.accepted)
    assert reduce(lambda a, i: a ^ values[i], rep, 0) == target


@given(vector_families)
def test_accepted_set_is_prefix_greedy(family):
    d, values = family
    b = Gf2Basis(d)
    for i, bits in enumerate(values):
        b.insert(i, BitVec(d, bits))
    again = Gf2Basis(d)
    assert all(again.insert(i, BitVec(d, values[i])) for i in b.accepted)


@given(vector_families)
def test_reduced_rows_match_their_history(family):
    d, values = family
    b = Gf2Basis(d)
    for i, bits in enumerate(values):
        b.insert(i, BitVec(d, bits))
    for slot, (_, row, pivot) in enumerate(b.rows):
        assert row & -row == 1 << pivot
        history = b._history[slot]
        total = 0
        for j in range(b.rank):
            if (history >> j) & 1:
                total ^= b._originals[j]
        assert total == row
