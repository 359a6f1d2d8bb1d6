"""Isomorphism testing for small p-groups by backtracking on generator images."""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Tuple

import numpy as np

from .group import EnumerationCapExceeded, PcGroup
from .subgroups import (
    Subgroup,
    agemo,
    center,
    derived_subgroup,
    frattini,
    join,
    lower_central_series,
    omega,
    rank,
    span,
)

DEFAULT_ISO_CAP = 3**5


def _as_group(X) -> PcGroup:
    if isinstance(X, Subgroup):
        return X.as_group[0]
    return X


def invariants(G: PcGroup) -> Tuple:
    """Cheap isomorphism invariants: order statistics and characteristic subgroup sizes."""
    orders = Counter(G.orders().tolist())
    lcs = lower_central_series(G)
    return (
        G.order,
        tuple(sorted(orders.items())),
        rank(G),
        len(lcs) - 1,
        derived_subgroup(G).order,
        omega(G, 1).order,
        agemo(G, 1).order,
        center(G).order,
    )


def _signatures(G: PcGroup) -> np.ndarray:
    """Per-element automorphism invariants, one row per element."""
    ids = G.all_ids()
    T = G.table
    cols = [G.orders(ids)]
    if T is not None:
        cols.append((T == T.T).sum(axis=1))
    chars = [center(G), frattini(G), agemo(G, 1), omega(G, 1)] + lower_central_series(G)[1:]
    for S in chars:
        cols.append(S.mask().astype(np.int64))
    cols.append(G.orders(G.power_many(ids, G.prime)))
    return np.stack(cols, axis=1)


def _generating_positions(G: PcGroup) -> List[int]:
    phi_depths = set(frattini(G).depths)
    return [G.weights[k] for k in range(G.ngens) if k not in phi_depths]


def _bfs_tree(G: PcGroup, gens: List[int]):
    N = G.order
    parent = np.full(N, -1, dtype=np.int64)
    via = np.full(N, -1, dtype=np.int64)
    order = [0]
    parent[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for j, s in enumerate(gens):
                y = G.mul(x, s)
                if parent[y] < 0:
                    parent[y] = x
                    via[y] = j
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return np.array(order, dtype=np.int64), parent, via


def find_isomorphism(G, H, *, cap: int = DEFAULT_ISO_CAP) -> Dict[int, int] | None:
    """Return generator images {s: phi(s)} of an isomorphism G -> H, or None."""
    G, H = _as_group(G), _as_group(H)
    if G.prime != H.prime or G.order != H.order:
        return None
    if G.order > cap:
        raise EnumerationCapExceeded(f"isomorphism test above cap {cap}")
    if invariants(G) != invariants(H):
        return None
    gens = _generating_positions(G)
    if not gens:
        return {}
    sigG, sigH = _signatures(G), _signatures(H)
    candidates = []
    for s in gens:
        match = np.flatnonzero((sigH == sigG[s]).all(axis=1))
        if match.size == 0:
            return None
        candidates.append([int(c) for c in match])

    order, parent, via = _bfs_tree(G, gens)
    N = G.order
    right = [G.mul_many(np.arange(N), s) for s in gens]

    def test(imgs: List[int]) -> bool:
        phi = np.empty(N, dtype=np.int64)
        phi[0] = 0
        for x in order[1:]:
            phi[x] = H.mul(int(phi[parent[x]]), imgs[via[x]])
        for j, img in enumerate(imgs):
            if not np.array_equal(phi[right[j]], H.mul_many(phi, img)):
                return False
        return np.unique(phi).size == N

    phi_H = frattini(H)
    imgs: List[int] = []

    def search(t: int) -> bool:
        if t == len(gens):
            return test(imgs)
        for c in candidates[t]:
            # images must stay independent modulo the Frattini subgroup
            if phi_H.contains(c) or (imgs and join(phi_H, span(H, imgs)).contains(c)):
                continue
            imgs.append(c)
            if search(t + 1):
                return True
            imgs.pop()
        return False

    if search(0):
        return dict(zip(gens, imgs))
    return None


def is_isomorphic(G, H, *, cap: int = DEFAULT_ISO_CAP) -> bool:
    return find_isomorphism(G, H, cap=cap) is not None
