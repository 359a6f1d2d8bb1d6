"""Subgroups of a pc group via induced generating sequences.

A subgroup is stored as a canonical induced generating sequence (IGS):
elements with pairwise distinct depths (position of the first nonzero
exponent), leading exponent 1, and zero exponent at every other member's
leading position.  Two subgroups are equal iff their IGS tuples are equal.

The generators a_k..a_n span a central series with elementary abelian
factors, so leading exponents add under multiplication; sifting an element
through an IGS is therefore a sequence of single multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .group import AmbientMismatch, Element, EnumerationCapExceeded, PcGroup
from .pcp import PcPresentation, check_consistency


class NotNormal(ValueError):
    pass


class Subgroup:
    """A subgroup of ``ambient`` given by its canonical IGS (element indices)."""

    def __init__(self, ambient: PcGroup, igs: Sequence[int]):
        self.ambient = ambient
        self.igs = tuple(int(g) for g in igs)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.igs == other.igs and _same_ambient(self.ambient, other.ambient)

    def __hash__(self):
        return hash(self.igs)

    def __repr__(self):
        rows = ", ".join(str(self.ambient.elem(g)) for g in self.igs)
        return f"<Subgroup of order {self.order}: [{rows}]>"

    @property
    def prime(self) -> int:
        return self.ambient.prime

    @property
    def order(self) -> int:
        return self.ambient.prime ** len(self.igs)

    @property
    def log_order(self) -> int:
        return len(self.igs)

    @cached_property
    def depths(self) -> Tuple[int, ...]:
        return tuple(self.ambient.depth(g) for g in self.igs)

    @cached_property
    def _by_depth(self) -> Dict[int, int]:
        return dict(zip(self.depths, self.igs))

    def rows(self) -> List[Tuple[int, ...]]:
        """IGS members as exponent vectors."""
        return [self.ambient.exponents(g) for g in self.igs]

    def gens(self) -> Tuple[Element, ...]:
        return tuple(self.ambient.elem(g) for g in self.igs)

    def is_trivial(self) -> bool:
        return not self.igs

    def contains(self, x) -> bool:
        if isinstance(x, Element):
            x = x.index
        return _sift(self.ambient, self._by_depth, int(x)) == 0

    def __contains__(self, x):
        return self.contains(x)

    def issubset(self, other: "Subgroup") -> bool:
        return all(other.contains(g) for g in self.igs)

    def __le__(self, other: "Subgroup") -> bool:
        return self.issubset(other)

    @cached_property
    def _elements(self) -> np.ndarray:
        G = self.ambient
        if self.order > G.enum_cap:
            raise EnumerationCapExceeded(f"subgroup of order {self.order} exceeds enumeration cap")
        elems = np.zeros(1, dtype=np.int64)
        p = G.prime
        for g in reversed(self.igs):
            blocks = []
            gp = 0
            for _ in range(p):
                blocks.append(G.mul_many(gp, elems))
                gp = G.mul(gp, g)
            elems = np.concatenate(blocks)
        return elems

    def element_ids(self) -> np.ndarray:
        """Indices of all elements, in lexicographic order of IGS coordinates."""
        return self._elements

    def elements(self) -> Iterator[Element]:
        G = self.ambient
        for x in self._elements:
            yield G.elem(int(x))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.ambient.order, dtype=bool)
        m[self._elements] = True
        return m

    def coordinates(self, x: int) -> Tuple[int, ...]:
        """Exponents c with x = h_1^c_1 ... h_r^c_r over the IGS, or raise."""
        G = self.ambient
        out = []
        for d, h in zip(self.depths, self.igs):
            e = G.digit(x, d)
            out.append(e)
            if e:
                x = G.mul(G.power(h, -e), x)
        if x != 0:
            raise ValueError("element not in subgroup")
        return tuple(out)

    @cached_property
    def as_group(self) -> Tuple[PcGroup, np.ndarray]:
        """This subgroup as a pc group on its IGS, with the embedding.

        Returns ``(H, embed)`` where ``embed[y]`` is the ambient index of the
        element with index ``y`` in ``H``.
        """
        G, p, r = self.ambient, self.prime, len(self.igs)
        powers = tuple(self.coordinates(G.power(h, p)) for h in self.igs)
        comms = {}
        for j in range(r):
            for i in range(j):
                c = self.coordinates(G.commutator(self.igs[j], self.igs[i]))
                if any(c):
                    comms[(j, i)] = c
        pres = PcPresentation(p, r, powers if r else (), comms)
        H = PcGroup(pres, enum_cap=G.enum_cap, table_cap=G.table_cap)
        return H, self._elements if self.order <= G.enum_cap else None


def _same_ambient(G: PcGroup, H: PcGroup) -> bool:
    return G is H or G.presentation == H.presentation


def _check_ambient(G: PcGroup, H: PcGroup):
    if not _same_ambient(G, H):
        raise AmbientMismatch("subgroups live in different groups")


def _sift(G: PcGroup, by_depth: Dict[int, int], x: int) -> int:
    p = G.prime
    while x:
        d = G.depth(x)
        h = by_depth.get(d)
        if h is None:
            return x
        e = G.digit(x, d)
        x = G.mul(x, G.power(h, p - e))
    return x


def _canonical(G: PcGroup, by_depth: Dict[int, int]) -> Tuple[int, ...]:
    depths = sorted(by_depth)
    p = G.prime
    out = []
    for d in depths:
        g = by_depth[d]
        for d2 in depths:
            if d2 <= d:
                continue
            f = G.digit(g, d2)
            if f:
                g = G.mul(g, G.power(by_depth[d2], p - f))
        out.append(g)
    return tuple(out)


def _close(G: PcGroup, gens: Iterable[int], by_depth: Dict[int, int] | None = None) -> Dict[int, int]:
    p = G.prime
    igs = dict(by_depth or {})
    queue = [int(g) for g in gens]
    while queue:
        x = _sift(G, igs, queue.pop())
        if x == 0:
            continue
        d = G.depth(x)
        e = G.digit(x, d)
        x = G.power(x, pow(e, -1, p))
        queue.append(G.power(x, p))
        queue.extend(G.commutator(x, g) for g in igs.values())
        igs[d] = x
    return igs


def _ids(G: PcGroup, xs) -> List[int]:
    out = []
    for x in xs:
        if isinstance(x, Element):
            if not _same_ambient(x.group, G):
                raise AmbientMismatch("generator from a different group")
            out.append(x.index)
        else:
            out.append(int(x))
    return out


def as_subgroup(X) -> Subgroup:
    """Coerce a PcGroup to its whole-group subgroup; Subgroups pass through."""
    if isinstance(X, Subgroup):
        return X
    if isinstance(X, PcGroup):
        return Subgroup(X, X.weights)
    raise TypeError(f"expected PcGroup or Subgroup, got {type(X).__name__}")


def span(G: PcGroup, gens: Iterable = ()) -> Subgroup:
    """Smallest subgroup of G containing ``gens`` (Elements or indices)."""
    return Subgroup(G, _canonical(G, _close(G, _ids(G, gens))))


def join(*subgroups: Subgroup) -> Subgroup:
    G = subgroups[0].ambient
    for H in subgroups[1:]:
        _check_ambient(G, H.ambient)
    base = max(subgroups, key=lambda H: H.order)
    by = dict(base._by_depth)
    gens = [g for H in subgroups if H is not base for g in H.igs]
    return Subgroup(G, _canonical(G, _close(G, gens, by)))


def trivial_subgroup(G: PcGroup) -> Subgroup:
    return Subgroup(G, ())


def membership(x, H: Subgroup) -> bool:
    return H.contains(x)


def subgroup_order(H: Subgroup) -> int:
    return H.order


def is_normal(H: Subgroup, K=None) -> bool:
    """True iff H is normalised by K (the whole ambient group by default)."""
    G = H.ambient
    conjugators = G.weights if K is None else as_subgroup(K).igs
    return all(H.contains(G.conjugate(h, g)) for h in H.igs for g in conjugators)


def normal_closure(gens, K=None, G: PcGroup | None = None) -> Subgroup:
    """Normal closure of ``gens`` (an iterable or a Subgroup) under K (default: ambient)."""
    if isinstance(gens, Subgroup):
        G = gens.ambient
        by = dict(gens._by_depth)
    else:
        gens = list(gens)
        if G is None:
            if K is not None:
                G = as_subgroup(K).ambient
            elif gens and isinstance(gens[0], Element):
                G = gens[0].group
            else:
                raise ValueError("ambient group required")
        by = _close(G, _ids(G, gens))
    conjugators = G.weights if K is None else as_subgroup(K).igs
    while True:
        new = []
        current = dict(by)
        for h in current.values():
            for g in conjugators:
                c = G.conjugate(h, g)
                if _sift(G, by, c):
                    new.append(c)
        if not new:
            return Subgroup(G, _canonical(G, by))
        by = _close(G, new, by)


def commutator_subgroup(H, K) -> Subgroup:
    H, K = as_subgroup(H), as_subgroup(K)
    _check_ambient(H.ambient, K.ambient)
    G = H.ambient
    comms = [G.commutator(h, k) for h in H.igs for k in K.igs]
    HK = join(H, K)
    return normal_closure(comms, HK, G=G)


def derived_subgroup(H) -> Subgroup:
    H = as_subgroup(H)
    return commutator_subgroup(H, H)


def lower_central_series(H) -> List[Subgroup]:
    """[gamma_1, gamma_2, ..., trivial]."""
    H = as_subgroup(H)
    series = [H]
    while not series[-1].is_trivial():
        nxt = commutator_subgroup(series[-1], H)
        if nxt == series[-1]:
            raise RuntimeError("lower central series stalled; group not nilpotent?")
        series.append(nxt)
    return series


def nilpotency_class(H) -> int:
    return len(lower_central_series(H)) - 1


def center(H) -> Subgroup:
    H = as_subgroup(H)
    G = H.ambient
    E = H.element_ids()
    keep = np.ones(E.shape, dtype=bool)
    for g in H.igs:
        keep &= G.mul_many(E, g) == G.mul_many(g, E)
    return span(G, E[keep])


def frattini(H) -> Subgroup:
    """Phi(H) = [H, H] H^p, generated by H' and the p-th powers of the IGS."""
    H = as_subgroup(H)
    G = H.ambient
    D = derived_subgroup(H)
    by = dict(D._by_depth)
    return Subgroup(G, _canonical(G, _close(G, [G.power(h, G.prime) for h in H.igs], by)))


def rank(H) -> int:
    """d(H): minimal number of generators, log_p |H / Phi(H)|."""
    H = as_subgroup(H)
    return H.log_order - frattini(H).log_order


def exponent(H) -> int:
    H = as_subgroup(H)
    return int(H.ambient.orders(H.element_ids()).max())


# ---------------------------------------------------------------------------
# Omega and Agemo


def power_ids(H, k: int) -> np.ndarray:
    """Sorted distinct indices of {h^(p^k) : h in H}."""
    H = as_subgroup(H)
    G = H.ambient
    return np.unique(G.power_many(H.element_ids(), G.prime**k))


def order_ids(H, k: int) -> np.ndarray:
    """Sorted indices of {h in H : o(h) <= p^k}."""
    H = as_subgroup(H)
    G = H.ambient
    E = H.element_ids()
    return np.sort(E[G.power_many(E, G.prime**k) == 0])


def power_set(H, k: int) -> frozenset:
    H = as_subgroup(H)
    return frozenset(H.ambient.elem(int(x)) for x in power_ids(H, k))


def order_set(H, k: int) -> frozenset:
    H = as_subgroup(H)
    return frozenset(H.ambient.elem(int(x)) for x in order_ids(H, k))


def _span_of_set(G: PcGroup, xs: np.ndarray) -> Subgroup:
    by: Dict[int, int] = {}
    for x in xs:
        if _sift(G, by, int(x)):
            by = _close(G, [int(x)], by)
    return Subgroup(G, _canonical(G, by))


def agemo(H, k: int) -> Subgroup:
    """The k-th Agemo subgroup: generated by all p^k-th powers."""
    H = as_subgroup(H)
    if k == 0:
        return H
    return _span_of_set(H.ambient, power_ids(H, k))


def omega(H, k: int) -> Subgroup:
    """The k-th Omega subgroup: generated by elements of order <= p^k."""
    H = as_subgroup(H)
    return _span_of_set(H.ambient, order_ids(H, k))


# ---------------------------------------------------------------------------
# Maximal and low-index subgroups


def _hyperplanes(d: int, p: int) -> Iterator[List[Tuple[int, ...]]]:
    """Bases of all (d-1)-dimensional subspaces of F_p^d."""
    for lead in range(d):
        for tail in np.ndindex(*([p] * (d - lead - 1))):
            f = [0] * lead + [1] + list(tail)
            basis = []
            for t in range(d):
                if t == lead:
                    continue
                v = [0] * d
                v[t] = 1
                # make f.v = 0 by adjusting the lead coordinate
                v[lead] = (-f[t]) % p
                basis.append(tuple(v))
            yield basis


def maximal_subgroups(H) -> List[Subgroup]:
    """The (p^d - 1)/(p - 1) subgroups of index p in H."""
    H = as_subgroup(H)
    G = H.ambient
    p = G.prime
    if H.is_trivial():
        return []
    phi = frattini(H)
    basis: List[int] = []
    by = dict(phi._by_depth)
    for h in H.igs:
        if _sift(G, by, h):
            basis.append(h)
            by = _close(G, [h], by)
    d = len(basis)
    out = []
    seen = set()
    for hyper in _hyperplanes(d, p):
        lifts = []
        for v in hyper:
            x = 0
            for b, e in zip(basis, v):
                if e:
                    x = G.mul(x, G.power(b, e))
            lifts.append(x)
        M = Subgroup(G, _canonical(G, _close(G, lifts, dict(phi._by_depth))))
        if M.igs not in seen:
            seen.add(M.igs)
            out.append(M)
    return out


def iter_low_index_subgroups(H, i: int) -> Iterator[Subgroup]:
    """Lazily yield each subgroup of index p^i in H exactly once."""
    H = as_subgroup(H)
    seen: List[set] = [set() for _ in range(i + 1)]

    def walk(K: Subgroup, level: int):
        if level == i:
            yield K
            return
        for M in maximal_subgroups(K):
            if M.igs in seen[level + 1]:
                continue
            seen[level + 1].add(M.igs)
            yield from walk(M, level + 1)

    if i > H.log_order:
        return
    seen[0].add(H.igs)
    yield from walk(H, 0)


def low_index_subgroups(H, i: int) -> List[Subgroup]:
    """All subgroups of index p^i in H, by repeated maximal-subgroup descent."""
    return list(iter_low_index_subgroups(H, i))


def all_subgroups(H) -> List[Subgroup]:
    H = as_subgroup(H)
    out = []
    for i in range(H.log_order + 1):
        out.extend(low_index_subgroups(H, i))
    return out


# ---------------------------------------------------------------------------
# Quotients


@dataclass
class QuotientMap:
    """The natural map from ``source`` onto ``target`` = source / kernel."""

    source: PcGroup
    kernel: Subgroup
    target: PcGroup
    positions: Tuple[int, ...]
    _inv_kernel: List[List[int]] = field(repr=False)

    def project_id(self, x: int) -> int:
        G = self.source
        for d, h_inv in zip(self.kernel.depths, self._inv_kernel):
            e = G.digit(x, d)
            if e:
                x = G.mul(x, h_inv[e])
        return self.target.index([G.digit(x, k) for k in self.positions])

    def project_ids(self, xs) -> np.ndarray:
        G = self.source
        xs = np.array(xs, dtype=np.int64, copy=True)
        for d, h_inv in zip(self.kernel.depths, self._inv_kernel):
            e = G.digit(xs, d)
            xs = G.mul_many(xs, np.asarray(h_inv, dtype=np.int64)[e])
        out = np.zeros_like(xs)
        for k in self.positions:
            out = out * G.prime + G.digit(xs, k)
        return out

    def projection(self, x: Element) -> Element:
        if not _same_ambient(x.group, self.source):
            raise AmbientMismatch("element not in the source group")
        return self.target.elem(self.project_id(x.index))

    __call__ = projection

    def lift_id(self, y: int) -> int:
        """A preimage of target index y (zeros at kernel positions)."""
        G = self.source
        exps = [0] * G.ngens
        for k, e in zip(self.positions, self.target.exponents(y)):
            exps[k] = e
        return G.index(exps)

    def image(self, H) -> Subgroup:
        H = as_subgroup(H)
        return span(self.target, [self.project_id(h) for h in H.igs])

    def preimage(self, K: Subgroup) -> Subgroup:
        G = self.source
        return Subgroup(
            G, _canonical(G, _close(G, [self.lift_id(y) for y in K.igs], dict(self.kernel._by_depth)))
        )


def quotient(G, N: Subgroup, *, check_normal: bool = True) -> QuotientMap:
    """Build a consistent pc presentation for G/N and the projection."""
    G = G.ambient if isinstance(G, Subgroup) else G
    _check_ambient(G, N.ambient)
    if check_normal and not is_normal(N):
        raise NotNormal("kernel is not a normal subgroup")
    p = G.prime
    inv_kernel = [[G.power(h, -e) for e in range(p)] for h in N.igs]
    positions = tuple(k for k in range(G.ngens) if k not in set(N.depths))
    m = len(positions)

    def reduce(x: int) -> Tuple[int, ...]:
        for d, h_inv in zip(N.depths, inv_kernel):
            e = G.digit(x, d)
            if e:
                x = G.mul(x, h_inv[e])
        return tuple(G.digit(x, k) for k in positions)

    gens = [G.weights[k] for k in positions]
    powers = tuple(reduce(G.power(g, p)) for g in gens)
    comms = {}
    for j in range(m):
        for i in range(j):
            c = reduce(G.commutator(gens[j], gens[i]))
            if any(c):
                comms[(j, i)] = c
    pres = PcPresentation(p, m, powers, comms)
    ok, failures = check_consistency(pres)
    if not ok:
        raise RuntimeError(f"internal error: quotient presentation inconsistent: {failures[:3]}")
    target = PcGroup(pres, check=False, enum_cap=G.enum_cap, table_cap=G.table_cap)
    return QuotientMap(G, N, target, positions, inv_kernel)


def subgroup_from_rows(G: PcGroup, rows: Iterable[Sequence[int]]) -> Subgroup:
    return span(G, [G.index(r) for r in rows])
