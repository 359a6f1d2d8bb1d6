from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcgroups.corpus import builtin
from pcgroups.group import (
    AmbientMismatch,
    EnumerationCapExceeded,
    InconsistentPresentation,
    PcGroup,
    commutator,
    conjugate,
    element_order,
    enumerate_elements,
    inverse,
    multiply,
    power,
)
from pcgroups.oracles import naive_multiply
from pcgroups.pcp import Collector, presentation_from_relations


def test_spec_products_in_J(J):
    a1, a2, a3, a4 = J.gens()
    assert (a2 * a1).exponents == (1, 1, 1, 0)
    assert (a1 * a1 * a1).exponents == (0, 0, 0, 1)
    assert commutator(a2, a1) == a3
    assert power(a2, 3).exponents == (0, 0, 0, 2)
    assert inverse(J.identity()) == J.identity()
    assert multiply(a2, J.identity()) == a2
    assert element_order(a1) == 9
    assert element_order(a3) == 3
    assert element_order(J.identity()) == 1
    assert a4.order() == 3


def test_conjugate_convention(J):
    a1, a2, a3, _ = J.gens()
    # a2^a1 = a1^-1 a2 a1 = a2 [a2, a1]
    assert conjugate(a2, a1) == a2 * a3
    assert conjugate(a2, a1) == a2 * commutator(a2, a1)


def test_enumeration_is_lexicographic(J):
    elems = list(enumerate_elements(J))
    assert len(elems) == 81
    assert [e.exponents for e in elems] == sorted(e.exponents for e in elems)
    assert len({e.exponents for e in elems}) == 81


def test_enumeration_cap():
    G = PcGroup(builtin("J").presentation, enum_cap=27)
    with pytest.raises(EnumerationCapExceeded):
        G.all_ids()


def test_inconsistent_presentation_rejected():
    bad = presentation_from_relations(3, 3, powers={1: {2: 1}}, comms={(2, 1): {3: 1}})
    with pytest.raises(InconsistentPresentation):
        PcGroup(bad)


def test_ambient_mismatch(J):
    other = builtin("extraspecial-3-exp3").group
    with pytest.raises(AmbientMismatch):
        J.gens()[0] * other.gens()[0]


def test_associativity_exhaustive_J(J):
    T = J.table
    for x in range(J.order):
        assert np.array_equal(T[T[x]], T[x][T])


@pytest.mark.parametrize("name", ["J", "C9:C3", "Q8", "D8", "B23"])
def test_naive_oracle_all_pairs(name):
    G = builtin(name).group
    pres = G.presentation
    for x in range(G.order):
        u = G.exponents(x)
        for y in range(G.order):
            assert naive_multiply(pres, u, G.exponents(y)) == G.exponents(G.mul(x, y))


def test_naive_oracle_small_catalog(small_groups):
    for e in small_groups:
        if e.order != 81:
            continue
        G = e.group
        pres = G.presentation
        ids = range(G.order)
        assert all(
            naive_multiply(pres, G.exponents(x), G.exponents(y)) == G.exponents(G.mul(x, y))
            for x in ids
            for y in ids
        ), e.id


def test_table_agrees_with_collector(fixtures_corpus):
    rng = np.random.default_rng(0)
    for e in fixtures_corpus:
        G = e.group
        col = Collector(G.presentation)
        for x, y in rng.integers(0, G.order, size=(50, 2)):
            assert G.exponents(G.mul(int(x), int(y))) == col.mul(G.exponents(int(x)), G.exponents(int(y)))


def test_random_triples_large(fixtures_corpus):
    rng = np.random.default_rng(1)
    for e in fixtures_corpus:
        G = e.group
        x, y, z = rng.integers(0, G.order, size=(3, 2000))
        assert np.array_equal(G.mul_many(G.mul_many(x, y), z), G.mul_many(x, G.mul_many(y, z)))


def _groups():
    return st.sampled_from(["J", "C9:C3", "C3xC9", "Q8", "D8", "B23", "extraspecial-5-exp5"])


@given(_groups(), st.data())
def test_inverse_power_order_laws(name, data):
    G = builtin(name).group
    x = data.draw(st.integers(0, G.order - 1))
    assert G.mul(x, G.inverse(x)) == 0
    assert G.mul(G.inverse(x), x) == 0
    assert G.power(x, G.order) == 0
    o = G.element_order(x)
    assert G.order % o == 0
    assert G.power(x, o) == 0
    assert o == 1 or G.power(x, o // G.prime) != 0
    k = data.draw(st.integers(-20, 20))
    assert G.power(x, k) == G.power_many(np.array([x]), k)[0]


@given(_groups(), st.data())
def test_commutator_identity(name, data):
    G = builtin(name).group
    x = G.elem(data.draw(st.integers(0, G.order - 1)))
    y = G.elem(data.draw(st.integers(0, G.order - 1)))
    assert x * y == y * x * commutator(x, y)
    assert conjugate(x, y) == ~y * x * y


def test_orders_vectorized_matches_scalar(J):
    orders = J.orders()
    assert [J.element_order(x) for x in range(J.order)] == orders.tolist()
    assert sorted(set(orders.tolist())) == [1, 3, 9]


def test_element_repr_and_index(J):
    a1, a2, *_ = J.gens()
    x = a1 * a2**2
    assert repr(x) == "a1*a2^2"
    assert J.elem(x.index) == x
    assert repr(J.identity()) == "1"
