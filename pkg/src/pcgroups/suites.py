"""Theorem suites run over a corpus, with replayable counterexample witnesses."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .corpus import CorpusEntry, builtin
from .group import DEFAULT_ENUM_CAP, PcGroup
from .isomorphism import DEFAULT_ISO_CAP, is_isomorphic
from .oracles import (
    agemo_oracle,
    closure,
    commutator_oracle,
    naive_multiply,
    omega_oracle,
    table_consistency,
)
from .pcp import PcPresentation
from .properties import (
    DEFAULT_SECTION_CAP,
    agemo_ratio_check,
    cond_index,
    cond_omega,
    cond_omega_witness,
    cond_power,
    cond_power_witness,
    evaluate,
    exponent_log,
    hall_congruence_witness,
    in_Op,
    is_Mi,
    is_P1,
    is_P2,
    is_potent,
    is_powerful,
    is_regular,
    non_potent_witness,
    non_powerful_subgroup,
    non_powerful_witness,
    powerful_agemo_generators_check,
    powerful_identities_check,
    regular_power_structure,
    wilson_omega_check,
)
from .subgroups import (
    Subgroup,
    agemo,
    center,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    frattini,
    join,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
    omega,
    rank,
    span,
)

SUITES = (
    "A",
    "B",
    "C",
    "uniqueness-81",
    "exp9-unique",
    "exp27-none",
    "p2-remark",
    "m2-remark",
    "oracle",
    "instances",
    "manifest",
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

M2_FIXTURES = ("2187-83", "2187-84", "2187-85", "2187-90", "2187-91", "2187-92")


@dataclass
class SuiteOptions:
    enum_cap: int = DEFAULT_ENUM_CAP
    iso_cap: int = DEFAULT_ISO_CAP
    section_cap: int = DEFAULT_SECTION_CAP
    regular_cap: int = 3**5
    oracle_cap: int = 3**6
    naive_cap: int = 3**4
    hall_cap: int = 3**5
    seed: int = 0
    jobs: int = 1


@dataclass
class Violation:
    group_id: str
    predicate: str
    witness: List[Tuple[int, ...]] = field(default_factory=list)
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    status: str
    checked: int
    violations: List[Violation]
    wall_time: float
    seed: int
    notes: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["violations"] = [
            {**asdict(v), "witness": [list(w) for w in v.witness]} for v in self.violations
        ]
        return rec


@dataclass
class _Outcome:
    group_id: str
    checked: bool = False
    violations: List[Violation] = field(default_factory=list)
    facts: Dict[str, object] = field(default_factory=dict)


def _vectors(G: PcGroup, xs) -> List[Tuple[int, ...]]:
    return [G.exponents(int(x)) for x in xs if x is not None]


def _group(pres: PcPresentation, opts: SuiteOptions, gid: str) -> PcGroup:
    return PcGroup(pres, name=gid, check=False, enum_cap=opts.enum_cap)


# ---------------------------------------------------------------------------
# per-group checks; each returns an _Outcome


def _check_A(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    p = G.prime
    if p == 2 or p - 3 < 1:
        return out
    out.checked = True
    if is_potent(G):
        return out
    for i in range(1, min(p - 3, G.ngens) + 1):
        if is_Mi(G, i):
            w = non_potent_witness(G)
            out.violations.append(Violation(gid, f"A:m_{i}=>potent", _vectors(G, [w])))
    return out


def _check_B(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid, checked=True)
    d = rank(G)
    if d < 3 or is_powerful(G):
        return out
    for i in range(1, d - 1):
        if is_Mi(G, i):
            w = non_powerful_witness(G)
            out.violations.append(Violation(gid, f"B:m_{i}=>powerful", _vectors(G, [w]), f"d={d}"))
    return out


_J_CACHE: Dict[str, PcGroup] = {}


def _J() -> PcGroup:
    if "J" not in _J_CACHE:
        _J_CACHE["J"] = builtin("J").group
    return _J_CACHE["J"]


def _is_J(G: PcGroup, opts: SuiteOptions) -> bool:
    return G.order == 81 and G.prime == 3 and is_isomorphic(G, _J(), cap=opts.iso_cap)


def _check_C(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.prime == 2:
        return out
    out.checked = True
    if not is_Mi(G, 1):
        return out
    out.facts["m1"] = True
    for i in range(1, exponent_log(G) + 1):
        w = cond_power_witness(G, i)
        if w is not None:
            out.violations.append(Violation(gid, f"cond_power_{i}", _vectors(G, [w])))
        w = cond_omega_witness(G, i)
        if w is not None:
            out.violations.append(Violation(gid, f"cond_omega_{i}", _vectors(G, [w])))
        if not cond_index(G, i):
            if _is_J(G, opts):
                out.facts.setdefault("exceptions", []).append(f"cond_index_{i}")
            else:
                detail = f"|Omega_{i}|*|mho_{i}| = {omega(G, i).order * agemo(G, i).order} != {G.order}"
                out.violations.append(Violation(gid, f"cond_index_{i}", [], detail))
    return out


def _check_u81(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.prime != 3 or G.order != 81:
        return out
    out.checked = True
    out.facts["hit"] = nilpotency_class(G) == 3 and is_Mi(G, 1)
    return out


def _two_gen_m1(G: PcGroup, exp: int, max_order: int) -> bool:
    return (
        G.prime == 3
        and G.order <= max_order
        and rank(G) == 2
        and exponent(G) == exp
        and is_Mi(G, 1)
    )


def _check_exp9(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.prime != 3 or G.order > 3**7 or G.order > opts.enum_cap or not _two_gen_m1(G, 9, 3**7):
        return out
    out.checked = True
    if not cond_index(G, 1):
        out.facts["fails"] = True
        if not _is_J(G, opts):
            out.violations.append(Violation(gid, "cond_index_1", [], "fails but is not J"))
    return out


def _check_exp27(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.prime != 3 or G.order > 3**6 or not _two_gen_m1(G, 27, 3**6):
        return out
    out.checked = True
    for i in range(1, 4):
        if not cond_index(G, i):
            out.violations.append(Violation(gid, f"cond_index_{i}"))
    return out


def _check_p2(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid, checked=True)
    for name, fn in (("cond_power_1", cond_power), ("cond_omega_1", cond_omega), ("cond_index_1", cond_index)):
        if fn(G, 1):
            out.violations.append(Violation(gid, f"{name}=false", [], "condition holds"))
    return out


def _fails_somewhere(G: PcGroup, fn) -> Optional[int]:
    for i in range(1, exponent_log(G) + 1):
        if not fn(G, i):
            return i
    return None


def _check_m2(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid, checked=True)
    H = non_powerful_subgroup(G, 2)
    if H is not None:
        out.violations.append(Violation(gid, "m_2", _vectors(G, H.igs), "index p^2 subgroup not powerful"))
    wanted = [("cond_omega", cond_omega)] if G.order == 81 else [("cond_power", cond_power), ("cond_index", cond_index)]
    for name, fn in wanted:
        i = _fails_somewhere(G, fn)
        if i is None:
            out.violations.append(Violation(gid, f"{name} fails", [], "holds at every level"))
        else:
            out.facts[name] = i
    return out


def _check_oracle(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.order > opts.oracle_cap:
        return out
    out.checked = True
    rng = random.Random(f"{opts.seed}:{gid}")
    E = G.all_ids()

    def compare(name: str, fast: Subgroup, slow: np.ndarray):
        if not np.array_equal(np.sort(fast.element_ids()), slow):
            out.violations.append(Violation(gid, f"oracle:{name}", _vectors(G, fast.igs), f"{fast.order} vs {slow.size}"))

    for i in range(1, exponent_log(G) + 1):
        compare(f"omega_{i}", omega(G, i), omega_oracle(G, E, i))
        compare(f"agemo_{i}", agemo(G, i), agemo_oracle(G, E, i))
    compare("derived", derived_subgroup(G), commutator_oracle(G, E, E))
    lcs = lower_central_series(G)
    for c in range(1, len(lcs) - 1):
        compare(f"gamma_{c + 2}", lcs[c + 1], commutator_oracle(G, lcs[c].element_ids(), E))
    for t in range(3):
        gens = [rng.randrange(G.order) for _ in range(1 + t)]
        compare(f"span{gens}", span(G, gens), closure(G, gens))
    H = span(G, [rng.randrange(G.order)])
    K = span(G, [rng.randrange(G.order)])
    compare("commutator", commutator_subgroup(H, K), commutator_oracle(G, H.element_ids(), K.element_ids()))
    if G.order <= opts.naive_cap:
        pres = G.presentation
        ok = all(
            naive_multiply(pres, G.exponents(x), G.exponents(y)) == G.exponents(G.mul(x, y))
            for x in range(G.order)
            for y in range(G.order)
        )
        if not ok:
            out.violations.append(Violation(gid, "oracle:multiply"))
        if not table_consistency(pres)[0]:
            out.violations.append(Violation(gid, "oracle:consistency"))
    return out


def _check_instances(G: PcGroup, gid: str, opts: SuiteOptions) -> _Outcome:
    out = _Outcome(gid)
    if G.order > opts.oracle_cap:
        return out
    out.checked = True
    p = G.prime
    v = out.violations

    def need(ok: bool, name: str, detail: str = ""):
        if not ok:
            v.append(Violation(gid, name, [], detail))

    powerful = is_powerful(G)
    if powerful:
        need(powerful_agemo_generators_check(G), "powerful=>mho_1 generated by p-th powers of generators")
        if p > 2:
            need(powerful_identities_check(G), "powerful=>power-commutator identities")
    # Fitting bound over characteristic and maximal subgroups (all normal)
    normals = [derived_subgroup(G), center(G), frattini(G), omega(G, 1), agemo(G, 1)] + maximal_subgroups(G)
    classes = [nilpotency_class(N) for N in normals]
    for a in range(len(normals)):
        for b in range(a + 1, len(normals)):
            MN = join(normals[a], normals[b])
            need(nilpotency_class(MN) <= classes[a] + classes[b], "fitting", f"{a},{b}")
    if G.order <= opts.hall_cap:
        w = hall_congruence_witness(G, 1)
        if w is not None:
            v.append(Violation(gid, "hall_congruence_1", _vectors(G, w)))
    if in_Op(G):
        e = exponent_log(G)
        for m in range(1, e):
            for k in range(1, e - m + 1):
                need(wilson_omega_check(G, m, k), f"wilson_{m}_{k}")
    m1 = is_Mi(G, 1)
    # odd primes only: D8 is M_1 with Omega_1(D8) = D8 of exponent 4
    if m1 and p > 2:
        for i in range(1, exponent_log(G) + 1):
            need(exponent(omega(G, i)) <= p**i, f"m_1=>exp omega_{i}<=p^{i}")
            need(cond_power(G, i), f"m_1=>cond_power_{i}")
        need(is_powerful(agemo(G, 1)), "m_1=>mho_1 powerful")
        if p == 3:
            for M in maximal_subgroups(G):
                need(agemo_ratio_check(G, M), "agemo_ratio", repr(M.igs))
    if exponent(G) == p:
        for i in (1, 2):
            if i <= G.ngens and is_Mi(G, i):
                need(nilpotency_class(G) <= i + 1, f"exp p and m_{i}=>class<={i + 1}")
    if p == 3 and rank(G) <= 2:
        # G / mho_1(G) is the largest exponent-3 quotient and is 2-generated
        need(G.order // agemo(G, 1).order <= 27, "2-generator exponent-3 quotient <= 27")
    if G.order <= opts.regular_cap:
        reg = is_regular(G, opts.regular_cap)
        out.facts["regular"] = reg
        if reg:
            need(regular_power_structure(G), "regular=>regular power structure")
        if nilpotency_class(G) < p:
            need(bool(reg), "class<p=>regular")
    if G.order <= opts.section_cap:
        p1, p2 = is_P1(G, opts.section_cap), is_P2(G, opts.section_cap)
        out.facts["p1"], out.facts["p2"] = p1, p2
        if p2:
            need(bool(p1), "P2=>P1")
        if p > 2 and nilpotency_class(G) <= 2:
            need(bool(p2), "class 2=>P2")
        if p > 2 and m1 and rank(G) <= 2 and exponent(G) <= p * p:
            need(bool(p2), "m_1, d<=2, exp<=p^2=>P2")
    return out


def _check_manifest(G: PcGroup, gid: str, opts: SuiteOptions, expected: Dict[str, object]) -> _Outcome:
    out = _Outcome(gid, checked=bool(expected))
    for key, want in sorted(expected.items()):
        got = evaluate(G, key)
        if got != want:
            out.violations.append(Violation(gid, f"manifest:{key}", [], f"expected {want}, computed {got}"))
    return out


CHECKS: Dict[str, Callable[[PcGroup, str, SuiteOptions], _Outcome]] = {
    "A": _check_A,
    "B": _check_B,
    "C": _check_C,
    "uniqueness-81": _check_u81,
    "exp9-unique": _check_exp9,
    "exp27-none": _check_exp27,
    "p2-remark": _check_p2,
    "m2-remark": _check_m2,
    "oracle": _check_oracle,
    "instances": _check_instances,
    "manifest": _check_manifest,
}


def _task(args) -> _Outcome:
    suite, gid, pres, opts, expected = args
    G = _group(pres, opts, gid)
    if G.order > opts.enum_cap:
        return _Outcome(gid)
    if suite == "manifest":
        return _check_manifest(G, gid, opts, expected)
    return CHECKS[suite](G, gid, opts)


# ---------------------------------------------------------------------------
# driver


def _find(corpus: Sequence[CorpusEntry], short: str) -> Optional[CorpusEntry]:
    hits = [e for e in corpus if e.short_id == short]
    hits.sort(key=lambda e: (not e.id.startswith("fixture:"), e.id))
    return hits[0] if hits else None


def _select(suite: str, corpus: Sequence[CorpusEntry]) -> Tuple[List[CorpusEntry], List[str]]:
    """Entries a suite runs on, and any missing named fixtures."""
    if suite == "p2-remark":
        e = _find(corpus, "64-31")
        return ([e] if e else []), ([] if e else ["64-31"])
    if suite == "m2-remark":
        found, missing = [], []
        for short in ("81-7",) + M2_FIXTURES:
            e = _find(corpus, short)
            (found.append(e) if e else missing.append(short))
        return found, missing
    return list(corpus), []


def run_suite(suite: str, corpus: Sequence[CorpusEntry], options: SuiteOptions | None = None) -> SuiteResult:
    """Run one suite; status is pass, fail, or skipped (missing fixtures or nothing to check)."""
    if suite not in CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    opts = options or SuiteOptions()
    t0 = time.perf_counter()
    entries, missing = _select(suite, corpus)
    tasks = [(suite, e.id, e.presentation, opts, e.expected) for e in entries]
    if opts.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            outcomes = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * opts.jobs))))
    else:
        outcomes = [_task(t) for t in tasks]
    violations = [v for o in outcomes for v in o.violations]
    checked = sum(o.checked for o in outcomes)
    notes: List[str] = []
    details: Dict[str, object] = {}
    status = FAIL if violations else PASS

    if suite == "C":
        details["m1_groups"] = sum(bool(o.facts.get("m1")) for o in outcomes)
        details["exceptions"] = {o.group_id: o.facts["exceptions"] for o in outcomes if "exceptions" in o.facts}
    elif suite == "uniqueness-81":
        hits = [o.group_id for o in outcomes if o.facts.get("hit")]
        details["witnesses"] = hits
        if checked == 0:
            status = SKIPPED
            notes.append("no groups of order 81 in corpus")
        else:
            listed = sum(e.id.startswith("catalog:") and e.order == 81 for e in entries)
            if listed != 15:
                notes.append(f"{listed} catalog groups of order 81 present; the full classification has 15")
            classes = _iso_classes([e for e in entries if e.id in hits], opts)
            details["isomorphism_classes"] = len(classes)
            if len(classes) != 1:
                status = FAIL
                violations.append(Violation("*", "unique M_1 of maximal class", [], f"{len(classes)} classes: {hits}"))
    elif suite == "exp9-unique":
        fails = [o.group_id for o in outcomes if o.facts.get("fails")]
        details["failing"] = fails
        if checked == 0:
            status = SKIPPED
            notes.append("no 2-generator M_1 3-groups of exponent 9 in corpus")
        elif not fails:
            status = FAIL
            violations.append(Violation("*", "exactly one failure", [], "no group fails the index identity"))
    elif suite == "exp27-none":
        if checked == 0:
            status = SKIPPED
            notes.append("no 2-generator M_1 3-groups of exponent 27 and order <= 3^6 in corpus")
    elif suite == "m2-remark":
        details["failing_levels"] = {o.group_id: o.facts for o in outcomes}
    elif suite == "instances":
        details["regular"] = sum(o.facts.get("regular") is True for o in outcomes)
        details["p2"] = sum(o.facts.get("p2") is True for o in outcomes)

    if missing:
        notes.append("missing fixtures: " + ", ".join(missing))
        if status == PASS:
            status = SKIPPED
    if suite in ("A", "B", "C", "oracle", "instances", "manifest") and checked == 0 and status == PASS:
        status = SKIPPED
        notes.append("no applicable groups in corpus")
    return SuiteResult(
        suite=suite,
        status=status,
        checked=checked,
        violations=violations,
        wall_time=round(time.perf_counter() - t0, 3),
        seed=opts.seed,
        notes=notes,
        details=details,
    )


def _iso_classes(entries: Sequence[CorpusEntry], opts: SuiteOptions) -> List[List[str]]:
    classes: List[Tuple[PcGroup, List[str]]] = []
    for e in entries:
        for rep, ids in classes:
            if is_isomorphic(rep, e.group, cap=opts.iso_cap):
                ids.append(e.id)
                break
        else:
            classes.append((e.group, [e.id]))
    return [ids for _, ids in classes]


def replay(violation: Violation, entry: CorpusEntry, options: SuiteOptions | None = None, suite: str | None = None) -> bool:
    """Re-run the check that produced ``violation`` and confirm it reappears identically."""
    opts = options or SuiteOptions()
    suites = [suite] if suite else list(CHECKS)
    for s in suites:
        out = _task((s, entry.id, entry.presentation, opts, entry.expected))
        if any(v == violation for v in out.violations):
            return True
    return False
