"""Power-commutator presentations of finite p-groups.

A presentation on generators a_1, ..., a_n has relations

    a_i^p     = w_i        (w_i a word in a_{i+1}, ..., a_n)
    [a_j,a_i] = c_{j,i}    for j > i (c_{j,i} a word in a_{j+1}, ..., a_n)

with the commutator convention [x, y] = x^-1 y^-1 x y, so that
a_j a_i = a_i a_j [a_j, a_i].  Words are stored as exponent vectors in
normal form a_1^{e_1} ... a_n^{e_n} with 0 <= e_k < p.

Indices are 0-based in code and 1-based in the text format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from sympy import isprime

Word = Tuple[int, ...]


class PresentationError(ValueError):
    """Raised for malformed or non-weighted presentation text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PcPresentation:
    """A weighted power-commutator presentation.

    ``power_rhs[i]`` is the normal form of a_i^p and ``comm_rhs[(j, i)]``
    (j > i) the normal form of [a_j, a_i]; trivial commutators are omitted.
    """

    prime: int
    ngens: int
    power_rhs: Tuple[Word, ...]
    comm_rhs: Dict[Tuple[int, int], Word] = field(default_factory=dict)

    def __post_init__(self):
        p, n = self.prime, self.ngens
        if not isprime(p):
            raise PresentationError(f"{p} is not prime")
        if n < 0:
            raise PresentationError("ngens must be non-negative")
        if len(self.power_rhs) != n:
            raise PresentationError(f"expected {n} power relations, got {len(self.power_rhs)}")
        powers = tuple(_reduce_word(w, n, p) for w in self.power_rhs)
        comms = {}
        for (j, i), w in sorted(self.comm_rhs.items()):
            if not 0 <= i < j < n:
                raise PresentationError(f"commutator index ({j + 1},{i + 1}) out of range")
            w = _reduce_word(w, n, p)
            if any(w):
                comms[(j, i)] = w
        for i, w in enumerate(powers):
            if any(w[: i + 1]):
                raise PresentationError(f"power relation {i + 1} is not weighted")
        for (j, i), w in comms.items():
            if any(w[: j + 1]):
                raise PresentationError(f"commutator relation ({j + 1},{i + 1}) is not weighted")
        object.__setattr__(self, "power_rhs", powers)
        object.__setattr__(self, "comm_rhs", comms)

    @property
    def order(self) -> int:
        return self.prime ** self.ngens

    def comm(self, j: int, i: int) -> Word:
        """Normal form of [a_j, a_i] for j > i."""
        return self.comm_rhs.get((j, i), (0,) * self.ngens)

    def identity(self) -> Word:
        return (0,) * self.ngens

    def generator(self, k: int) -> Word:
        w = [0] * self.ngens
        w[k] = 1
        return tuple(w)

    def __hash__(self):
        return hash((self.prime, self.ngens, self.power_rhs, tuple(sorted(self.comm_rhs.items()))))

    def to_text(self) -> str:
        return serialize_presentation(self)


def _reduce_word(w: Sequence[int], n: int, p: int) -> Word:
    if len(w) != n:
        raise PresentationError(f"word {tuple(w)} has length {len(w)}, expected {n}")
    return tuple(int(e) % p for e in w)


# ---------------------------------------------------------------------------
# Text format

_ATOM = re.compile(r"(\d+)\^(-?\d+)$")


def _parse_rhs(tokens: List[Tuple[str, int]], n: int, p: int, lineno: int) -> Word:
    w = [0] * n
    last = 0
    for tok, col in tokens:
        m = _ATOM.match(tok)
        if not m:
            raise PresentationError(f"bad atom {tok!r}, expected g^e", lineno, col)
        g, e = int(m.group(1)), int(m.group(2))
        if not 1 <= g <= n:
            raise PresentationError(f"generator {g} out of range 1..{n}", lineno, col)
        if g <= last:
            raise PresentationError("atoms must have strictly increasing generators", lineno, col)
        if not 0 <= e < p:
            raise PresentationError(f"exponent {e} out of range [0, {p - 1}]", lineno, col)
        w[g - 1] = e
        last = g
    return tuple(w)


def _tokens(text: str) -> List[Tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]


def parse_presentation(text: str) -> PcPresentation:
    """Parse the line-oriented PCP text format.

    Structural validation only (weighted, exponents in range, p prime);
    consistency is checked separately by :func:`check_consistency`.
    """
    p = n = None
    powers: Dict[int, Word] = {}
    comms: Dict[Tuple[int, int], Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rhs = line.partition(":")
        toks = _tokens(head)
        if not toks:
            raise PresentationError("missing directive", lineno, 1)
        key = toks[0][0]
        if key == "p" or key == "ngens":
            if sep or len(toks) != 2 or not toks[1][0].isdigit():
                raise PresentationError(f"expected '{key} <integer>'", lineno, toks[0][1])
            value = int(toks[1][0])
            if key == "p":
                if not isprime(value):
                    raise PresentationError(f"{value} is not prime", lineno, toks[1][1])
                p = value
            else:
                if value < 1:
                    raise PresentationError("ngens must be at least 1", lineno, toks[1][1])
                n = value
            continue
        if p is None or n is None:
            raise PresentationError("'p' and 'ngens' must precede relations", lineno, 1)
        if not sep:
            raise PresentationError("missing ':' in relation", lineno, len(line.rstrip()) + 1)
        rhs_col = len(head) + 2
        rhs_toks = [(t, c + rhs_col - 1) for t, c in _tokens(rhs)]
        idx = []
        for tok, col in toks[1:]:
            if not tok.isdigit() or not 1 <= int(tok) <= n:
                raise PresentationError(f"bad generator index {tok!r}", lineno, col)
            idx.append(int(tok) - 1)
        word = _parse_rhs(rhs_toks, n, p, lineno)
        if key == "power":
            if len(idx) != 1:
                raise PresentationError("expected 'power i : rhs'", lineno, toks[0][1])
            (i,) = idx
            if any(word[: i + 1]):
                raise PresentationError(f"power relation {i + 1} is not weighted", lineno, rhs_col)
            if i in powers:
                raise PresentationError(f"duplicate power relation {i + 1}", lineno, toks[0][1])
            powers[i] = word
        elif key == "comm":
            if len(idx) != 2:
                raise PresentationError("expected 'comm j i : rhs'", lineno, toks[0][1])
            j, i = idx
            if not j > i:
                raise PresentationError("commutator indices must satisfy j > i", lineno, toks[1][1])
            if any(word[: j + 1]):
                raise PresentationError(
                    f"commutator relation ({j + 1},{i + 1}) is not weighted", lineno, rhs_col
                )
            if (j, i) in comms:
                raise PresentationError(f"duplicate commutator ({j + 1},{i + 1})", lineno, toks[0][1])
            comms[(j, i)] = word
        else:
            raise PresentationError(f"unknown directive {key!r}", lineno, toks[0][1])
    if p is None or n is None:
        raise PresentationError("missing 'p' or 'ngens' line")
    zero = (0,) * n
    return PcPresentation(p, n, tuple(powers.get(i, zero) for i in range(n)), comms)


def _format_word(w: Word) -> str:
    return " ".join(f"{k + 1}^{e}" for k, e in enumerate(w) if e)


def serialize_presentation(pres: PcPresentation) -> str:
    lines = [f"p {pres.prime}", f"ngens {pres.ngens}"]
    for i, w in enumerate(pres.power_rhs):
        lines.append(f"power {i + 1} : {_format_word(w)}".rstrip())
    for (j, i), w in sorted(pres.comm_rhs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"comm {j + 1} {i + 1} : {_format_word(w)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Collection


class Collector:
    """Collection from the left on exponent vectors.

    To form u * a_k the part of u to the right of position k is conjugated
    by a_k (a_j^{a_k} = a_j [a_j, a_k]) and a_k^p is replaced by its power
    relation.  Everything to the right of k lives in <a_{k+1}, ..., a_n>, so
    the recursion bottoms out.
    """

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        n = pres.ngens
        # conj[k][j]: normal form of a_j^{a_k} for j > k, assuming a_j c_{j,k}
        # is already collected (c_{j,k} lives strictly right of j).
        self._conj = []
        for k in range(n):
            row = {}
            for j in range(k + 1, n):
                c = list(pres.comm(j, k))
                c[j] += 1
                row[j] = tuple(c)
            self._conj.append(row)

    def mul_gen(self, u: Sequence[int], k: int) -> Word:
        p = self.pres.prime
        n = self.pres.ngens
        head = list(u[:k])
        tail = (0,) * (k + 1) + tuple(u[k + 1 :])
        e = u[k] + 1
        if e == p:
            e = 0
            rest = self.pres.power_rhs[k]
        else:
            rest = (0,) * n
        if any(tail):
            conj = self._conj[k]
            for j in range(k + 1, n):
                for _ in range(tail[j]):
                    rest = self.mul(rest, conj[j])
        return tuple(head) + (e,) + tuple(rest[k + 1 :])

    def mul(self, u: Sequence[int], v: Sequence[int]) -> Word:
        w = tuple(u)
        for k, e in enumerate(v):
            for _ in range(e):
                w = self.mul_gen(w, k)
        return w

    def power(self, u: Sequence[int], m: int) -> Word:
        result = self.pres.identity()
        base = tuple(u)
        while m:
            if m & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            m >>= 1
        return result


def check_consistency(pres: PcPresentation) -> Tuple[bool, List[str]]:
    """Evaluate the standard consistency test words under collection.

    Returns ``(ok, failures)`` where each failure names the test word whose
    two bracketings collected to different normal forms.
    """
    col = Collector(pres)
    p, n = pres.prime, pres.ngens
    gen = pres.generator
    failures = []

    def gpow(k, m):
        return col.power(gen(k), m)

    for k in range(n):
        for j in range(k):
            for i in range(j):
                lhs = col.mul(gen(k), col.mul(gen(j), gen(i)))
                rhs = col.mul(col.mul(gen(k), gen(j)), gen(i))
                if lhs != rhs:
                    failures.append(f"a{k + 1}(a{j + 1} a{i + 1}) = (a{k + 1} a{j + 1}) a{i + 1}")
    for j in range(n):
        for i in range(j):
            lhs = col.mul(pres.power_rhs[j], gen(i))
            rhs = col.mul(gpow(j, p - 1), col.mul(gen(j), gen(i)))
            if lhs != rhs:
                failures.append(f"a{j + 1}^p a{i + 1} = a{j + 1}^(p-1) (a{j + 1} a{i + 1})")
            lhs = col.mul(gen(j), pres.power_rhs[i])
            rhs = col.mul(col.mul(gen(j), gen(i)), gpow(i, p - 1))
            if lhs != rhs:
                failures.append(f"a{j + 1} (a{i + 1}^p) = (a{j + 1} a{i + 1}) a{i + 1}^(p-1)")
    for i in range(n):
        lhs = col.mul(pres.power_rhs[i], gen(i))
        rhs = col.mul(gen(i), pres.power_rhs[i])
        if lhs != rhs:
            failures.append(f"a{i + 1}^p a{i + 1} = a{i + 1} a{i + 1}^p")
    return not failures, failures


def presentation_from_relations(
    prime: int,
    ngens: int,
    powers: Dict[int, Dict[int, int]] | None = None,
    comms: Dict[Tuple[int, int], Dict[int, int]] | None = None,
) -> PcPresentation:
    """Build a presentation from sparse 1-based relations.

    ``powers={1: {4: 1}}`` means a_1^p = a_4; ``comms={(2, 1): {3: 1}}``
    means [a_2, a_1] = a_3.
    """

    def word(atoms: Dict[int, int]) -> Word:
        w = [0] * ngens
        for g, e in atoms.items():
            w[g - 1] = e
        return tuple(w)

    zero = (0,) * ngens
    power_rhs = [zero] * ngens
    for i, atoms in (powers or {}).items():
        power_rhs[i - 1] = word(atoms)
    comm_rhs = {(j - 1, i - 1): word(atoms) for (j, i), atoms in (comms or {}).items()}
    return PcPresentation(prime, ngens, tuple(power_rhs), comm_rhs)

