"""Power-structure predicates for finite p-groups.

Conditions for a p-group G and level i >= 1:

* power:  the Agemo subgroup mho_i(G) is exactly the set of p^i-th powers;
* omega:  Omega_i(G) is exactly the set of elements of order <= p^i;
* index:  |G : mho_i(G)| = |Omega_i(G)|.

A group satisfying all three at every level has a regular power structure.
Above the exponent p^e all three hold trivially (mho_i = 1, Omega_i = G), so
levels are evaluated for 1 <= i <= e only.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import PcGroup
from .subgroups import (
    Subgroup,
    agemo,
    all_subgroups,
    as_subgroup,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    is_normal,
    iter_low_index_subgroups,
    join,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
    omega,
    order_ids,
    power_ids,
    quotient,
    rank,
    span,
    trivial_subgroup,
)

DEFAULT_REGULAR_CAP = 3**6
DEFAULT_SECTION_CAP = 3**5


def _to_group(X) -> PcGroup:
    if isinstance(X, Subgroup):
        return X.ambient if X.order == X.ambient.order else X.as_group[0]
    return X


def _log_p(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# powerful / potent / M_i


def is_powerful(H) -> bool:
    """[H, H] <= mho_1(H) for odd p, [H, H] <= mho_2(H) for p = 2."""
    H = as_subgroup(H)
    D = derived_subgroup(H)
    if D.is_trivial():
        return True
    A = agemo(H, 2 if H.prime == 2 else 1)
    return D.issubset(A)


def is_potent(H) -> bool:
    """gamma_{p-1}(H) <= mho_1(H); for p in {2, 3} this is being powerful."""
    H = as_subgroup(H)
    p = H.prime
    if p in (2, 3):
        return is_powerful(H)
    lcs = lower_central_series(H)
    gamma = lcs[p - 2] if p - 2 < len(lcs) else lcs[-1]
    return gamma.issubset(agemo(H, 1))


def non_powerful_subgroup(G, i: int) -> Optional[Subgroup]:
    """A subgroup of index p^i that is not powerful, or None."""
    for H in iter_low_index_subgroups(G, i):
        if not is_powerful(H):
            return H
    return None


def is_Mi(G, i: int) -> bool:
    """Every subgroup of index p^i is powerful."""
    return non_powerful_subgroup(G, i) is None


# ---------------------------------------------------------------------------
# the three conditions


def cond_power(G, i: int) -> bool:
    G = as_subgroup(G)
    return power_ids(G, i).size == agemo(G, i).order


def cond_omega(G, i: int) -> bool:
    G = as_subgroup(G)
    return order_ids(G, i).size == omega(G, i).order


def cond_index(G, i: int) -> bool:
    G = as_subgroup(G)
    return omega(G, i).order * agemo(G, i).order == G.order


def exponent_log(G) -> int:
    G = as_subgroup(G)
    return _log_p(exponent(G), G.prime)


def conditions(G) -> Dict[int, Tuple[bool, bool, bool]]:
    """{i: (power, omega, index)} for 1 <= i <= e where p^e = exp G."""
    G = as_subgroup(G)
    return {i: (cond_power(G, i), cond_omega(G, i), cond_index(G, i)) for i in range(1, exponent_log(G) + 1)}


def regular_power_structure(G) -> bool:
    return all(all(c) for c in conditions(G).values())


# ---------------------------------------------------------------------------
# pair searches: regularity and the power-product congruence


def conjugacy_class_reps(G: PcGroup) -> np.ndarray:
    """One representative (the smallest index) per conjugacy class."""
    ids = G.all_ids()
    N = G.order
    rows, cols = [], []
    for g in G.weights:
        rows.append(ids)
        cols.append(G.mul_many(G.mul_many(G.inverse(g), ids), g))
    r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    c = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    return np.sort(first)


def _pair_search(G: PcGroup, n: int, kernel_of) -> Optional[Tuple[int, int]]:
    """First pair (a, b) with (ab)^q not in a^q b^q K(<a,b>), q = p^n."""
    q = G.prime**n
    ids = G.all_ids()
    P = G.power_many(ids, q)
    cache: Dict[Tuple[int, ...], Subgroup] = {}
    for a in conjugacy_class_reps(G):
        a = int(a)
        ab = G.mul_many(a, ids)
        lhs = P[ab]
        rhs = G.mul_many(P[a], P)
        for b in np.flatnonzero(lhs != rhs):
            b = int(b)
            T = span(G, [a, b])
            K = cache.get(T.igs)
            if K is None:
                K = cache[T.igs] = kernel_of(T)
            x = G.mul(G.inverse(int(rhs[b])), int(lhs[b]))
            if not K.contains(x):
                return a, b
    return None


def regularity_witness(G) -> Optional[Tuple[int, int]]:
    """A pair (a, b) with (ab)^p outside a^p b^p mho_1(gamma_2(<a, b>)), or None."""
    return _pair_search(_to_group(G), 1, lambda T: agemo(derived_subgroup(T), 1))


def is_regular(G, cap: int = DEFAULT_REGULAR_CAP) -> Optional[bool]:
    """Hall regularity (checked at n = 1); None when |G| exceeds ``cap``.

    For p-groups the n = 1 identity for all pairs implies the identity for all
    n, so only p-th powers are examined.
    """
    if as_subgroup(G).order > cap:
        return None
    return regularity_witness(G) is None


def hall_kernel(T: Subgroup, n: int) -> Subgroup:
    """mho_n(gamma_2(T)) mho_{n-1}(gamma_p(T)) ... gamma_{p^n}(T)."""
    p = T.prime
    lcs = lower_central_series(T)
    K = trivial_subgroup(T.ambient)
    for j in range(n + 1):
        c = p**j if j else 2
        gamma = lcs[c - 1] if c - 1 < len(lcs) else lcs[-1]
        K = join(K, agemo(gamma, n - j))
    return K


def hall_congruence_witness(G, n: int = 1) -> Optional[Tuple[int, int]]:
    return _pair_search(_to_group(G), n, lambda T: hall_kernel(T, n))


def hall_congruence_check(G, n: int = 1) -> bool:
    """(xy)^(p^n) lies in x^(p^n) y^(p^n) K(<x, y>) for every pair."""
    return hall_congruence_witness(G, n) is None


# ---------------------------------------------------------------------------
# sections: P1 / P2


def _sections(G) -> Iterator[Tuple[Subgroup, Subgroup]]:
    for H in all_subgroups(G):
        if derived_subgroup(H).is_trivial():
            # abelian sections satisfy both conditions
            continue
        for N in all_subgroups(H):
            if is_normal(N, H):
                yield H, N


def section_power_ok(H: Subgroup, N: Subgroup) -> bool:
    """{(hN)^p} = mho_1(H/N), computed on cosets inside G."""
    G = H.ambient
    pw = power_ids(H, 1)
    covered = np.unique(G.mul_many(pw[:, None], N.element_ids()[None, :]))
    return covered.size == join(agemo(H, 1), N).order


def section_omega_ok(H: Subgroup, N: Subgroup) -> bool:
    """{hN : (hN)^p = 1} is a subgroup of H/N."""
    G = H.ambient
    E = H.element_ids()
    mask = N.mask()
    O = E[mask[G.power_many(E, G.prime)]]
    return O.size == span(G, O).order


def _section_check(G, cap, ok) -> Optional[bool]:
    G = as_subgroup(G)
    if G.order > cap:
        return None
    return all(ok(H, N) for H, N in _sections(G))


def is_P1(G, cap: int = DEFAULT_SECTION_CAP) -> Optional[bool]:
    """Every section satisfies the power condition at level 1 (None above cap)."""
    return _section_check(G, cap, section_power_ok)


def is_P2(G, cap: int = DEFAULT_SECTION_CAP) -> Optional[bool]:
    """Every section satisfies the omega condition at level 1 (None above cap)."""
    return _section_check(G, cap, section_omega_ok)


# ---------------------------------------------------------------------------
# lemma instances


def in_Op(G) -> bool:
    """The omega condition holds at every level."""
    return all(cond_omega(G, i) for i in range(1, exponent_log(G) + 1))


def wilson_omega_check(G, m: int, k: int) -> bool:
    """Omega_k(G / Omega_m(G)) = Omega_{m+k}(G) / Omega_m(G) (requires G in O_p)."""
    G = _to_group(G)
    if not in_Op(G):
        raise ValueError("group does not satisfy the omega condition at every level")
    q = quotient(G, omega(G, m))
    lhs = omega(q.target, k)
    rhs = q.image(omega(G, m + k))
    return lhs == rhs


def agemo_ratio_check(G, M: Subgroup) -> bool:
    """|mho_1(G)| equals |mho_1(M)| or p |mho_1(M)|."""
    G = as_subgroup(G)
    ratio, rem = divmod(agemo(G, 1).order, agemo(M, 1).order)
    return rem == 0 and ratio in (1, G.prime)


def powerful_agemo_generators_check(H) -> bool:
    """For powerful H: mho_1(H) = <h^p : h in IGS(H)>."""
    H = as_subgroup(H)
    G = H.ambient
    return agemo(H, 1) == span(G, [G.power(h, G.prime) for h in H.igs])


def powerful_identities_check(G, depth: int = 3) -> bool:
    """For powerful G, p odd: [mho_k, G] <= mho_{k+1}, gamma_k <= mho_{k-1}, mho_j(mho_k) = mho_{j+k}."""
    G = as_subgroup(G)
    lcs = lower_central_series(G)
    for k in range(depth + 1):
        if not commutator_subgroup(agemo(G, k), G).issubset(agemo(G, k + 1)):
            return False
        if k >= 1:
            gamma = lcs[k - 1] if k - 1 < len(lcs) else lcs[-1]
            if not gamma.issubset(agemo(G, k - 1)):
                return False
        for j in range(depth + 1 - k):
            if agemo(agemo(G, k), j) != agemo(G, j + k):
                return False
    return True


def potent_maximals_power_search(G) -> Optional[int]:
    """For p >= 5 with every maximal subgroup potent: a level where the power condition fails.

    A hit would answer an open question; None means this group is not one.
    """
    G = as_subgroup(G)
    if G.prime < 5 or not all(is_potent(M) for M in maximal_subgroups(G)):
        return None
    for i in range(1, exponent_log(G) + 1):
        if not cond_power(G, i):
            return i
    return None


# ---------------------------------------------------------------------------
# witnesses: normal-form ids that certify a failure


def _outside(A: Subgroup, B: Subgroup) -> Optional[int]:
    """An IGS member of A not in B."""
    for x in A.igs:
        if not B.contains(x):
            return x
    return None


def non_powerful_witness(H) -> Optional[int]:
    H = as_subgroup(H)
    return _outside(derived_subgroup(H), agemo(H, 2 if H.prime == 2 else 1))


def non_potent_witness(H) -> Optional[int]:
    H = as_subgroup(H)
    p = H.prime
    if p in (2, 3):
        return non_powerful_witness(H)
    lcs = lower_central_series(H)
    gamma = lcs[p - 2] if p - 2 < len(lcs) else lcs[-1]
    return _outside(gamma, agemo(H, 1))


def cond_power_witness(G, i: int) -> Optional[int]:
    """Smallest element of mho_i(G) that is not a p^i-th power."""
    G = as_subgroup(G)
    A = agemo(G, i).element_ids()
    miss = np.setdiff1d(A, power_ids(G, i))
    return int(miss[0]) if miss.size else None


def cond_omega_witness(G, i: int) -> Optional[int]:
    """Smallest element of Omega_i(G) of order above p^i."""
    G = as_subgroup(G)
    W = omega(G, i).element_ids()
    miss = np.setdiff1d(W, order_ids(G, i))
    return int(miss[0]) if miss.size else None


# ---------------------------------------------------------------------------
# manifest keys


def evaluate(G, key: str):
    """Value of a manifest-style key such as ``class``, ``m_2`` or ``cond_index_1``."""
    G = as_subgroup(G)
    simple = {
        "order": lambda: G.order,
        "class": lambda: nilpotency_class(G),
        "exponent": lambda: exponent(G),
        "d": lambda: rank(G),
        "powerful": lambda: is_powerful(G),
        "potent": lambda: is_potent(G),
        "regular": lambda: is_regular(G),
        "p1": lambda: is_P1(G),
        "p2": lambda: is_P2(G),
        "regular_power_structure": lambda: regular_power_structure(G),
    }
    if key in simple:
        return simple[key]()
    name, _, level = key.rpartition("_")
    fns = {"m": is_Mi, "cond_power": cond_power, "cond_omega": cond_omega, "cond_index": cond_index}
    if name in fns and level.isdigit():
        return fns[name](G, int(level))
    raise KeyError(f"unknown property {key!r}")


# ---------------------------------------------------------------------------
# report


@dataclass
class PropertyReport:
    group_id: str
    prime: int
    log_order: int
    d: int
    nilpotency_class: int
    exponent: int
    is_powerful: bool
    is_potent: bool
    is_regular: Optional[bool]
    m_levels: Dict[int, bool] = field(default_factory=dict)
    conditions: Dict[int, Tuple[bool, bool, bool]] = field(default_factory=dict)
    p1: Optional[bool] = None
    p2: Optional[bool] = None
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.prime**self.log_order

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["is_regular"] = _tri(self.is_regular)
        rec["p1"] = _tri(self.p1)
        rec["p2"] = _tri(self.p2)
        rec["m_levels"] = {str(i): v for i, v in self.m_levels.items()}
        rec["conditions"] = {str(i): list(c) for i, c in self.conditions.items()}
        return rec


def _tri(v: Optional[bool]):
    return "skipped" if v is None else v


def build_report(
    G,
    group_id: str = "",
    *,
    m_range=(1, 2),
    regular_cap: int = DEFAULT_REGULAR_CAP,
    section_cap: int = DEFAULT_SECTION_CAP,
    sections: bool = True,
) -> PropertyReport:
    timing = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timing[name] = round(time.perf_counter() - t0, 4)
        return out

    G = as_subgroup(G)
    p = G.prime
    rep = PropertyReport(
        group_id=group_id,
        prime=p,
        log_order=G.log_order,
        d=timed("d", lambda: rank(G)),
        nilpotency_class=timed("class", lambda: nilpotency_class(G)),
        exponent=timed("exponent", lambda: exponent(G)),
        is_powerful=timed("powerful", lambda: is_powerful(G)),
        is_potent=timed("potent", lambda: is_potent(G)),
        is_regular=timed("regular", lambda: is_regular(G, regular_cap)),
    )
    rep.m_levels = timed("m_levels", lambda: {i: is_Mi(G, i) for i in m_range if i <= G.log_order})
    rep.conditions = timed("conditions", lambda: conditions(G))
    if sections:
        rep.p1 = timed("p1", lambda: is_P1(G, section_cap))
        rep.p2 = timed("p2", lambda: is_P2(G, section_cap))
    rep.timing = timing
    return rep
