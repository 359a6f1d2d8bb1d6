from __future__ import annotations

from itertools import combinations

import pytest

from pcgroups.corpus import builtin
from pcgroups.group import EnumerationCapExceeded
from pcgroups.isomorphism import find_isomorphism, invariants, is_isomorphic
from pcgroups.subgroups import maximal_subgroups, quotient, trivial_subgroup


def test_maximal_subgroups_of_J(J):
    abelian = builtin("C3xC9").group
    metacyclic = builtin("C9:C3").group
    Ms = maximal_subgroups(J)
    assert sum(is_isomorphic(M, abelian) for M in Ms) == 1
    assert sum(is_isomorphic(M, metacyclic) for M in Ms) == 3


def test_cyclic_vs_elementary():
    C9 = builtin("cyclic", 2, p=3).group
    E9 = builtin("abelian", [1, 1], p=3).group
    assert not is_isomorphic(C9, E9)


def test_quaternion_vs_dihedral():
    assert not is_isomorphic(builtin("Q8").group, builtin("D8").group)
    assert is_isomorphic(builtin("D8").group, builtin("dihedral", 3).group)


def test_trivial_quotient_is_isomorphic(J):
    q = quotient(J, trivial_subgroup(J))
    phi = find_isomorphism(J, q.target)
    assert phi is not None and len(phi) == 2


def test_extraspecial_exponent_types_differ():
    a = builtin("extraspecial-3-exp3").group
    b = builtin("extraspecial-3-exp9").group
    assert invariants(a) != invariants(b)
    assert not is_isomorphic(a, b)
    assert is_isomorphic(a, builtin("B23").group)


def test_cap():
    G = builtin("abelian", [2, 2, 2], p=3).group
    with pytest.raises(EnumerationCapExceeded):
        is_isomorphic(G, G, cap=3**5)


def test_catalog_order_27_pairwise_distinct(three_groups):
    groups = [e.group for e in three_groups if e.order == 27]
    assert len(groups) == 5
    for G in groups:
        assert is_isomorphic(G, G)
    for G, H in combinations(groups, 2):
        assert not is_isomorphic(G, H)
        assert is_isomorphic(G, H) == is_isomorphic(H, G)


def test_catalog_order_81_classes(three_groups):
    groups = [e.group for e in three_groups if e.order == 81]
    assert len(groups) == 15
    for G, H in combinations(groups, 2):
        assert not is_isomorphic(G, H)
