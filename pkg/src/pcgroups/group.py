"""Group arithmetic on normal forms.

Elements of a group given by a consistent presentation are identified with
integers: the normal form a_1^{e_1} ... a_n^{e_n} has index
sum_k e_k p^(n-1-k), so index order is lexicographic order on exponent
vectors and 0 is the identity.

For groups of moderate size the right multiplications by the pc generators
are tabulated once (each table is an array over all elements, built
bottom-up with the same collection-from-the-left recursion as
:class:`~pcgroups.pcp.Collector`).  Small groups additionally get a full
multiplication table.  Everything above the tables only sees integer indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence, Tuple

import numpy as np

from .pcp import Collector, PcPresentation, Word, check_consistency

DEFAULT_ENUM_CAP = 3**10
DEFAULT_TABLE_CAP = 3**7
RIGHT_TABLE_CAP = 2**21


class InconsistentPresentation(ValueError):
    """The presentation fails the consistency test words."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("inconsistent presentation: " + "; ".join(self.failures[:5]))


class EnumerationCapExceeded(RuntimeError):
    pass


class AmbientMismatch(ValueError):
    pass


class PcGroup:
    """A finite p-group given by a consistent pc presentation."""

    def __init__(
        self,
        pres: PcPresentation,
        *,
        name: str | None = None,
        check: bool = True,
        enum_cap: int = DEFAULT_ENUM_CAP,
        table_cap: int = DEFAULT_TABLE_CAP,
    ):
        if check:
            ok, failures = check_consistency(pres)
            if not ok:
                raise InconsistentPresentation(failures)
        self.presentation = pres
        self.name = name
        self.prime = pres.prime
        self.ngens = pres.ngens
        self.order = pres.order
        self.enum_cap = enum_cap
        self.table_cap = table_cap
        n, p = self.ngens, self.prime
        self.weights = tuple(p ** (n - 1 - k) for k in range(n))
        self._collector = Collector(pres)

    def __repr__(self):
        label = self.name or f"pc group of order {self.prime}^{self.ngens}"
        return f"<PcGroup {label}>"

    # -- index <-> exponent vector ------------------------------------------

    def index(self, exps: Sequence[int]) -> int:
        p = self.prime
        x = 0
        for e in exps:
            x = x * p + (e % p)
        return x

    def exponents(self, x: int) -> Word:
        p = self.prime
        out = [0] * self.ngens
        for k in range(self.ngens - 1, -1, -1):
            x, out[k] = divmod(x, p)
        return tuple(out)

    def digit(self, xs, k: int):
        return (xs // self.weights[k]) % self.prime

    @cached_property
    def digits(self) -> np.ndarray:
        """Exponent vectors of all elements, shape (order, ngens)."""
        self._require_cap()
        ids = np.arange(self.order, dtype=np.int64)
        if self.ngens == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.stack([self.digit(ids, k) for k in range(self.ngens)], axis=1)

    @cached_property
    def depths(self) -> np.ndarray:
        """Position of the first nonzero exponent (ngens for the identity)."""
        d = self.digits
        nz = d != 0
        return np.where(nz.any(axis=1), nz.argmax(axis=1), self.ngens)

    def depth(self, x: int) -> int:
        for k, w in enumerate(self.weights):
            if x >= w:
                return k
        return self.ngens

    def leading_exponent(self, x: int) -> int:
        k = self.depth(x)
        if k == self.ngens:
            return 0
        return (x // self.weights[k]) % self.prime

    # -- tables ---------------------------------------------------------------

    @cached_property
    def right_tables(self) -> np.ndarray | None:
        """``R[k, x]`` = index of x * a_k, or None for very large groups."""
        if self.order > RIGHT_TABLE_CAP:
            return None
        n, p, N = self.ngens, self.prime, self.order
        R = np.zeros((n, N), dtype=np.int64)
        pres = self.presentation
        ids = np.arange(N, dtype=np.int64)
        for k in range(n - 1, -1, -1):
            W = self.weights[k]
            # conjugation by a_k on <a_{k+1}, ..., a_n>, i.e. on indices < W
            conj = np.zeros(W, dtype=np.int64)
            for j in range(n - 1, k, -1):
                c = list(pres.comm(j, k))
                c[j] += 1
                cj = self.index(c)
                wj = self.weights[j]
                tails = conj[:wj]
                for e in range(1, p):
                    base = self._power_small(R, cj, e, k + 1)
                    conj[e * wj : (e + 1) * wj] = self._mul_arrays(
                        R, np.full(wj, base, dtype=np.int64), tails, j + 1
                    )
            head = ids - ids % (W * p)
            ek = (ids // W) % p
            tail = ids % W
            wrap = ek == p - 1
            base = np.where(wrap, self.index(pres.power_rhs[k]), 0)
            rest = self._mul_arrays(R, base, conj[tail], k + 1)
            R[k] = head + ((ek + 1) % p) * W + rest
        return R

    def _mul_arrays(self, R, xs, ys, start: int = 0):
        res = np.array(xs, dtype=np.int64, copy=True)
        for m in range(start, self.ngens):
            d = self.digit(ys, m)
            for r in range(1, self.prime):
                mask = d >= r
                if not mask.any():
                    break
                res[mask] = R[m][res[mask]]
        return res

    def _power_small(self, R, x: int, e: int, start: int) -> int:
        acc = np.zeros(1, dtype=np.int64)
        base = np.array([x], dtype=np.int64)
        for _ in range(e):
            acc = self._mul_arrays(R, acc, base, start)
        return int(acc[0])

    @cached_property
    def table(self) -> np.ndarray | None:
        """Full multiplication table for groups up to ``table_cap``."""
        if self.order > self.table_cap:
            return None
        R = self.right_tables
        N = self.order
        dtype = np.int16 if N <= 2**15 else np.int32
        T = np.empty((N, N), dtype=dtype)
        T[0] = np.arange(N)
        for y in range(1, N):
            m = self.ngens - 1
            while (y // self.weights[m]) % self.prime == 0:
                m -= 1
            T[y] = R[m][T[y - self.weights[m]]]
        # T was filled as T[y, x] = x * y
        return np.ascontiguousarray(T.T)

    # -- arithmetic on indices -------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        T = self.table
        if T is not None:
            return int(T[x, y])
        R = self.right_tables
        if R is None:
            return self.index(self._collector.mul(self.exponents(x), self.exponents(y)))
        res = x
        for m, w in enumerate(self.weights):
            for _ in range((y // w) % self.prime):
                res = int(R[m, res])
        return res

    def mul_many(self, xs, ys) -> np.ndarray:
        """Elementwise products of two index arrays (broadcasting)."""
        xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
        T = self.table
        if T is not None:
            return T[xs, ys].astype(np.int64)
        R = self.right_tables
        if R is None:
            return np.array([self.mul(int(a), int(b)) for a, b in zip(xs.ravel(), ys.ravel())],
                            dtype=np.int64).reshape(xs.shape)
        return self._mul_arrays(R, xs.ravel(), ys.ravel()).reshape(xs.shape)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(x), -k)
        result, base = 0, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def power_many(self, xs, k: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if k < 0:
            xs, k = self.inverse_many(xs), -k
        result = np.zeros_like(xs)
        base = xs
        while k:
            if k & 1:
                result = self.mul_many(result, base)
            k >>= 1
            if k:
                base = self.mul_many(base, base)
        return result

    def inverse(self, x: int) -> int:
        if x == 0:
            return 0
        T = self.table
        if T is not None:
            return int(self.inverses[x])
        # x^(o(x)) = 1, so x^-1 = x^(o(x)-1)
        return self.power(x, self.element_order(x) - 1)

    @cached_property
    def inverses(self) -> np.ndarray:
        T = self.table
        if T is not None:
            return np.argmax(T == 0, axis=1).astype(np.int64)
        ids = self.all_ids()
        return np.array([self.inverse(int(x)) for x in ids], dtype=np.int64)

    def inverse_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self.table is not None or self.order <= self.enum_cap:
            return self.inverses[xs]
        return np.array([self.inverse(int(x)) for x in xs.ravel()], dtype=np.int64).reshape(xs.shape)

    def commutator(self, x: int, y: int) -> int:
        return self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))

    def conjugate(self, x: int, y: int) -> int:
        """x^y = y^-1 x y."""
        return self.mul(self.mul(self.inverse(y), x), y)

    def element_order(self, x: int) -> int:
        o = 1
        while x != 0:
            x = self.power(x, self.prime)
            o *= self.prime
        return o

    def orders(self, xs=None) -> np.ndarray:
        """Element orders of an index array (all elements by default)."""
        xs = self.all_ids() if xs is None else np.asarray(xs, dtype=np.int64)
        o = np.ones(xs.shape, dtype=np.int64)
        cur = xs.copy()
        while True:
            live = cur != 0
            if not live.any():
                return o
            o[live] *= self.prime
            cur = self.power_many(cur, self.prime)

    # -- enumeration ------------------------------------------------------------

    def _require_cap(self):
        if self.order > self.enum_cap:
            raise EnumerationCapExceeded(
                f"group of order {self.order} exceeds enumeration cap {self.enum_cap}"
            )

    def all_ids(self) -> np.ndarray:
        self._require_cap()
        return np.arange(self.order, dtype=np.int64)

    def generator_ids(self) -> Tuple[int, ...]:
        return self.weights

    # -- Element wrappers -------------------------------------------------------

    def element(self, exps: Sequence[int]) -> "Element":
        if len(exps) != self.ngens:
            raise ValueError(f"expected {self.ngens} exponents, got {len(exps)}")
        return Element(self, tuple(int(e) % self.prime for e in exps))

    def elem(self, x: int) -> "Element":
        return Element(self, self.exponents(int(x)))

    def identity(self) -> "Element":
        return Element(self, (0,) * self.ngens)

    def gens(self) -> Tuple["Element", ...]:
        return tuple(self.elem(w) for w in self.weights)

    def __iter__(self) -> Iterator["Element"]:
        return enumerate_elements(self)

    def __len__(self):
        return self.order


@dataclass(frozen=True, eq=False)
class Element:
    """A group element in normal form."""

    group: PcGroup
    exponents: Word

    @property
    def index(self) -> int:
        return self.group.index(self.exponents)

    def _other(self, other: "Element") -> int:
        if not isinstance(other, Element):
            return NotImplemented
        if other.group is not self.group and other.group.presentation != self.group.presentation:
            raise AmbientMismatch("elements belong to different groups")
        return other.index

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.exponents == other.exponents and (
            self.group is other.group or self.group.presentation == other.group.presentation
        )

    def __hash__(self):
        return hash(self.exponents)

    def __mul__(self, other: "Element") -> "Element":
        y = self._other(other)
        if y is NotImplemented:
            return NotImplemented
        return self.group.elem(self.group.mul(self.index, y))

    def __pow__(self, k: int) -> "Element":
        return self.group.elem(self.group.power(self.index, k))

    def __invert__(self) -> "Element":
        return self.inverse()

    def inverse(self) -> "Element":
        return self.group.elem(self.group.inverse(self.index))

    def order(self) -> int:
        return self.group.element_order(self.index)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __repr__(self):
        atoms = [f"a{k + 1}" + (f"^{e}" if e != 1 else "") for k, e in enumerate(self.exponents) if e]
        return "*".join(atoms) or "1"


def _same_group(x: Element, y: Element) -> PcGroup:
    if x.group is not y.group and x.group.presentation != y.group.presentation:
        raise AmbientMismatch("elements belong to different groups")
    return x.group


def multiply(x: Element, y: Element) -> Element:
    return x * y


def inverse(x: Element) -> Element:
    return x.inverse()


def power(x: Element, k: int) -> Element:
    return x**k


def commutator(x: Element, y: Element) -> Element:
    """[x, y] = x^-1 y^-1 x y."""
    G = _same_group(x, y)
    return G.elem(G.commutator(x.index, y.index))


def conjugate(x: Element, y: Element) -> Element:
    """x^y = y^-1 x y."""
    G = _same_group(x, y)
    return G.elem(G.conjugate(x.index, y.index))


def element_order(x: Element) -> int:
    return x.order()


def enumerate_elements(G: PcGroup) -> Iterator[Element]:
    """All elements in lexicographic normal-form order."""
    G._require_cap()
    for x in range(G.order):
        yield G.elem(x)
