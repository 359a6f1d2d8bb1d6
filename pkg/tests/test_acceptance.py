"""One test per acceptance criterion; each records a pass/fail line for the summary."""

from __future__ import annotations

import time

import pytest

from pcgroups.corpus import builtin
from pcgroups.group import PcGroup
from pcgroups.isomorphism import is_isomorphic
from pcgroups.properties import (
    cond_index,
    cond_omega,
    cond_power,
    conditions,
    evaluate,
    exponent_log,
    is_Mi,
)
from pcgroups.subgroups import agemo, exponent, maximal_subgroups, nilpotency_class, omega, rank
from pcgroups.suites import PASS, SuiteOptions, run_suite

from .conftest import ACCEPTANCE_LINES


def _record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def _J_facts(G: PcGroup) -> bool:
    mho, om = agemo(G, 1).order, omega(G, 1).order
    levels = range(1, exponent_log(G) + 1)
    return (
        G.order == 81
        and nilpotency_class(G) == 3
        and rank(G) == 2
        and exponent(G) == 9
        and (mho, om) == (3, 9)
        and mho * om == 27
        and not cond_index(G, 1)
        and all(cond_power(G, i) and cond_omega(G, i) for i in levels)
    )


def test_criterion_1_example_group(fixtures_corpus):
    t0 = time.perf_counter()
    J = PcGroup(builtin("J").presentation)
    (fx,) = [e for e in fixtures_corpus if e.short_id == "81-10"]
    ok = _J_facts(J) and _J_facts(PcGroup(fx.presentation))
    dt = time.perf_counter() - t0
    _record(1, ok and dt < 1, f"J and fixture 81-10: |mho_1|*|Omega_1| = 27, index fails at level 1 ({dt:.2f}s)")
    assert ok and dt < 1


def test_criterion_2_maximal_subgroups():
    t0 = time.perf_counter()
    J = PcGroup(builtin("J").presentation)
    Ms = maximal_subgroups(J)
    abelian = builtin("C3xC9").group
    metacyclic = builtin("C9:C3").group
    n_ab = sum(is_isomorphic(M, abelian) for M in Ms)
    n_meta = sum(is_isomorphic(M, metacyclic) for M in Ms)
    dt = time.perf_counter() - t0
    ok = len(Ms) == 4 and n_ab == 1 and n_meta == 3
    _record(2, ok and dt < 5, f"{len(Ms)} maximals: {n_ab} x C3xC9, {n_meta} x C9:C3 ({dt:.2f}s)")
    assert ok and dt < 5


def test_criterion_3_uniqueness(three_groups):
    order81 = [e for e in three_groups if e.order == 81]
    r = run_suite("uniqueness-81", order81)
    ok = (
        r.status == PASS
        and len(order81) == 15
        and r.details["witnesses"] == ["catalog:81-10"]
        and r.wall_time < 30
    )
    _record(3, ok, f"{len(order81)} groups of order 81, M_1 of maximal class: {r.details['witnesses']} ({r.wall_time:.1f}s)")
    assert ok


def test_criterion_4_theorem_C(three_groups):
    corpus = [e for e in three_groups if e.order <= 3**6]
    r = run_suite("C", corpus)
    exceptions = r.details["exceptions"]
    ok = (
        r.status == PASS
        and r.checked == len(corpus)
        and set(exceptions) == {"catalog:81-10"}
        and exceptions["catalog:81-10"] == ["cond_index_1"]
        and r.wall_time < 30 * 60
    )
    _record(
        4,
        ok,
        f"{r.checked} 3-groups, {r.details['m1_groups']} M_1, violations {len(r.violations)}, "
        f"index exceptions {exceptions} ({r.wall_time:.1f}s)",
    )
    assert ok, r.violations[:5]


def test_criterion_5_theorems_A_B(full_corpus):
    results = [run_suite(s, full_corpus) for s in ("A", "B")]
    ok = all(r.status == PASS for r in results)
    desc = ", ".join(f"{r.suite}: {r.checked} checked, {len(r.violations)} violations" for r in results)
    _record(5, ok, desc)
    assert ok, [v for r in results for v in r.violations][:5]


def test_criterion_6_counterexample_fixtures(fixtures_corpus, full_corpus):
    by_id = {e.short_id: e.group for e in fixtures_corpus}
    G64 = by_id["64-31"]
    ok64 = conditions(G64)[1] == (False, False, False)
    G81 = by_id["81-7"]
    ok81 = is_Mi(G81, 2) and not cond_omega(G81, 1)
    ids2187 = ["2187-83", "2187-84", "2187-85", "2187-90", "2187-91", "2187-92"]
    ok2187 = all(
        evaluate(by_id[g], "m_2") and not cond_power(by_id[g], 1) and not cond_index(by_id[g], 1) for g in ids2187
    )
    suites = [run_suite(s, full_corpus) for s in ("p2-remark", "m2-remark")]
    ok = ok64 and ok81 and ok2187 and all(r.status == PASS for r in suites)
    _record(6, ok, f"64-31 fails 1,2,3: {ok64}; 81-7 M_2 fails 2: {ok81}; six 2187 ids M_2 fail 1,3: {ok2187}")
    assert ok


@pytest.fixture(scope="module")
def small_corpus(full_corpus):
    return [e for e in full_corpus if e.order <= 3**6]


def test_criterion_7_oracles(small_corpus):
    opts = SuiteOptions(oracle_cap=3**6, naive_cap=3**4)
    r = run_suite("oracle", small_corpus, opts)
    naive = sum(e.order <= 3**4 for e in small_corpus)
    ok = r.status == PASS and r.checked == len(small_corpus)
    _record(7, ok, f"{r.checked} groups <= 3^6 against set closure, {naive} <= 3^4 against naive rewriting ({r.wall_time:.0f}s)")
    assert ok, r.violations[:5]


def test_criterion_8_instances(small_corpus):
    r = run_suite("instances", small_corpus)
    ok = r.status == PASS and r.checked == len(small_corpus)
    _record(8, ok, f"{r.checked} groups, {len(r.violations)} violations ({r.wall_time:.0f}s)")
    assert ok, r.violations[:5]
