from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcgroups.corpus import DATA_DIR
from pcgroups.oracles import table_consistency
from pcgroups.pcp import (
    Collector,
    PcPresentation,
    PresentationError,
    check_consistency,
    parse_presentation,
    presentation_from_relations,
    serialize_presentation,
)

J_TEXT = (DATA_DIR / "fixtures" / "81-10.pcp").read_text()


@st.composite
def weighted_presentations(draw, max_gens=4, primes=(2, 3)):
    """Random structurally valid presentations; most are inconsistent."""
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_gens))
    digit = st.integers(0, p - 1)

    def word_after(k):
        return tuple([0] * (k + 1) + [draw(digit) for _ in range(n - k - 1)])

    powers = tuple(word_after(i) for i in range(n))
    comms = {(j, i): word_after(j) for j in range(n) for i in range(j)}
    return PcPresentation(p, n, powers, comms)


def test_parse_J():
    pres = parse_presentation(J_TEXT)
    assert (pres.prime, pres.ngens) == (3, 4)
    assert pres.power_rhs == ((0, 0, 0, 1), (0, 0, 0, 2), (0,) * 4, (0,) * 4)
    assert pres.comm(1, 0) == (0, 0, 1, 0)
    assert pres.comm(2, 0) == (0, 0, 0, 1)
    assert pres.comm(3, 2) == (0,) * 4


def test_parse_cyclic_with_empty_rhs():
    pres = parse_presentation("p 3\nngens 1\npower 1 :\n")
    assert pres.order == 3
    assert check_consistency(pres) == (True, [])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p 3\nngens 2\ncomm 2 1 : 1^1\n", "not weighted"),
        ("p 3\nngens 2\npower 1 : 1^1\n", "not weighted"),
        ("p 4\nngens 1\n", "not prime"),
        ("p 3\nngens 2\npower 1 : 2^3\n", "out of range"),
        ("p 3\nngens 3\npower 1 : 3^1 2^1\n", "strictly increasing"),
        ("p 3\nngens 2\npower 1 2^1\n", "missing ':'"),
        ("p 3\nngens 2\nfrob 1 : 2^1\n", "unknown directive"),
        ("p 3\nngens 2\npower 1 : 2^1\npower 1 : 2^2\n", "duplicate"),
        ("p 3\nngens 2\ncomm 1 2 : \n", "j > i"),
        ("ngens 2\n", "missing 'p'"),
        ("p 3\nngens 2\npower 1 : x\n", "bad atom"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(PresentationError, match=fragment):
        parse_presentation(text)


def test_parse_error_carries_position():
    with pytest.raises(PresentationError) as exc:
        parse_presentation("p 3\nngens 3\npower 1 : 2^1 2^1\n")
    assert exc.value.line == 3
    assert exc.value.column == 15


def test_comments_and_blank_lines():
    text = "# header\n\np 2   # prime\nngens 2\npower 1 : 2^1  # a1^2 = a2\n"
    pres = parse_presentation(text)
    assert pres.power_rhs[0] == (0, 1)


def test_serialize_round_trip_is_byte_identical():
    pres = parse_presentation(J_TEXT)
    text = serialize_presentation(pres)
    assert serialize_presentation(parse_presentation(text)) == text
    assert text.splitlines()[:3] == ["p 3", "ngens 4", "power 1 : 4^1"]
    assert "power 3 :" in text.splitlines()


def test_trivial_commutators_are_dropped():
    pres = PcPresentation(3, 2, ((0, 0), (0, 0)), {(1, 0): (0, 3)})
    assert pres.comm_rhs == {}


def test_construction_rejects_unweighted_words():
    with pytest.raises(PresentationError):
        PcPresentation(3, 2, ((0, 0), (0, 0)), {(1, 0): (1, 0)})


def test_collector_products_in_J():
    col = Collector(parse_presentation(J_TEXT))
    a1, a2 = (1, 0, 0, 0), (0, 1, 0, 0)
    assert col.mul(a2, a1) == (1, 1, 1, 0)
    assert col.power(a1, 3) == (0, 0, 0, 1)
    assert col.power(a2, 3) == (0, 0, 0, 2)


def test_abelian_presentation_is_consistent():
    pres = presentation_from_relations(3, 3)
    assert check_consistency(pres) == (True, [])


def test_inconsistency_is_reported_with_test_word():
    bad = presentation_from_relations(2, 3, powers={1: {2: 1}}, comms={(2, 1): {3: 1}})
    ok, failures = check_consistency(bad)
    assert not ok
    assert any("a1" in f for f in failures)


@given(weighted_presentations())
def test_consistency_matches_table_oracle(pres):
    ok, _ = check_consistency(pres)
    assert ok == table_consistency(pres)[0]


@given(weighted_presentations(max_gens=5, primes=(2, 3, 5)))
def test_round_trip_random(pres):
    text = serialize_presentation(pres)
    again = parse_presentation(text)
    assert again == pres
    assert serialize_presentation(again) == text
