"""Brute-force oracles used to cross-check the fast paths.

Nothing here uses induced generating sequences or the collector's
shortcuts: subgroups are closed as sets, words are rewritten letter by
letter, and consistency is read off a full multiplication table.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .group import PcGroup
from .pcp import Collector, PcPresentation, Word


# ---------------------------------------------------------------------------
# set closure


def closure(G: PcGroup, gens: Iterable[int]) -> np.ndarray:
    """Sorted ids of the subgroup generated by ``gens``, by breadth-first closure."""
    gens = np.unique(np.asarray(list(gens), dtype=np.int64))
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(G.mul_many(frontier[:, None], gens[None, :]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


def naive_powers(G: PcGroup, xs: np.ndarray, k: int) -> np.ndarray:
    """x^k for each x by k - 1 successive multiplications."""
    out = np.zeros_like(xs)
    for _ in range(k):
        out = G.mul_many(out, xs)
    return out


def naive_inverses(G: PcGroup, xs: np.ndarray) -> np.ndarray:
    """Inverse by search for the right factor that yields the identity."""
    ids = np.arange(G.order, dtype=np.int64)
    return np.array([int(np.flatnonzero(G.mul_many(int(x), ids) == 0)[0]) for x in xs], dtype=np.int64)


def omega_oracle(G: PcGroup, elements: np.ndarray, k: int) -> np.ndarray:
    q = G.prime**k
    return closure(G, elements[naive_powers(G, elements, q) == 0])


def agemo_oracle(G: PcGroup, elements: np.ndarray, k: int) -> np.ndarray:
    q = G.prime**k
    return closure(G, np.unique(naive_powers(G, elements, q)))


def commutator_oracle(G: PcGroup, H: np.ndarray, K: np.ndarray) -> np.ndarray:
    """Closure of all [h, k] with h in H, k in K."""
    inv = naive_inverses(G, np.arange(G.order, dtype=np.int64))
    h, k = H[:, None], K[None, :]
    c = G.mul_many(G.mul_many(inv[h], inv[k]), G.mul_many(h, k))
    return closure(G, np.unique(c))


# ---------------------------------------------------------------------------
# naive rewriting


def _letters(w: Sequence[int]) -> List[int]:
    out = []
    for k, e in enumerate(w):
        out.extend([k] * e)
    return out


def rewrite(pres: PcPresentation, letters: Sequence[int]) -> Word:
    """Normal form of a positive word by leftmost-redex rewriting.

    Redexes are an out-of-order pair a_j a_i (j > i), rewritten to
    a_i a_j [a_j, a_i], and a run of p equal letters a_i, rewritten to the
    power relation.
    """
    p = pres.prime
    word = list(letters)
    while True:
        for t in range(len(word)):
            if t + 1 < len(word) and word[t] > word[t + 1]:
                j, i = word[t], word[t + 1]
                word[t : t + 2] = [i, j] + _letters(pres.comm(j, i))
                break
            if t + p <= len(word) and all(word[t + s] == word[t] for s in range(p)):
                word[t : t + p] = _letters(pres.power_rhs[word[t]])
                break
        else:
            break
    exps = [0] * pres.ngens
    for k in word:
        exps[k] += 1
    return tuple(exps)


def naive_multiply(pres: PcPresentation, u: Sequence[int], v: Sequence[int]) -> Word:
    return rewrite(pres, _letters(u) + _letters(v))


def naive_power(pres: PcPresentation, u: Sequence[int], m: int) -> Word:
    return rewrite(pres, _letters(u) * m)


# ---------------------------------------------------------------------------
# consistency by table


def collected_table(pres: PcPresentation) -> np.ndarray:
    """T[x, y] = collect(x * y) on normal-form ids, without assuming consistency."""
    n, p = pres.ngens, pres.prime
    N = pres.order
    col = Collector(pres)
    weights = [p ** (n - 1 - k) for k in range(n)]

    def word(x):
        return tuple((x // w) % p for w in weights)

    words = [word(x) for x in range(N)]
    T = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        for y in range(N):
            T[x, y] = sum(e * w for e, w in zip(col.mul(words[x], words[y]), weights))
    return T


def table_consistency(pres: PcPresentation) -> Tuple[bool, dict]:
    """Whether the collected product table is a group table on p^n normal forms.

    The table must have p^n distinct rows and columns (a Latin square) and
    be associative; a consistent presentation yields exactly this.
    """
    T = collected_table(pres)
    N = T.shape[0]
    rows = len({r.tobytes() for r in T})
    cols = len({c.tobytes() for c in T.T})
    latin = all(np.unique(r).size == N for r in T) and all(np.unique(c).size == N for c in T.T)
    # (xy)z = x(yz) for all triples, one x at a time
    assoc = all(np.array_equal(T[T[x]], T[x][T]) for x in range(N))
    info = {"distinct_rows": rows, "distinct_cols": cols, "latin": latin, "associative": assoc}
    return rows == N and latin and assoc, info
