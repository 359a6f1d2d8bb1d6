"""Built-in groups, catalog ingestion and report persistence.

Catalog directories hold one PCP file per group, named ``<order>-<index>.pcp``
after the SmallGroups numbering, plus an optional ``MANIFEST.txt`` of
``id property=value`` records with expected annotations.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from .group import PcGroup
from .pcp import PcPresentation, PresentationError, check_consistency, parse_presentation

DATA_DIR = Path(__file__).resolve().parent / "data"

_FILE_RE = re.compile(r"^(\d+)-(\d+)\.pcp$")


class CatalogError(ValueError):
    """Raised when a catalog cannot be loaded in full."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("catalog rejected:\n  " + "\n  ".join(self.problems))


@dataclass
class CorpusEntry:
    id: str
    presentation: PcPresentation
    expected: Dict[str, Any] = field(default_factory=dict)
    source: Path | None = None

    @cached_property
    def group(self) -> PcGroup:
        return PcGroup(self.presentation, name=self.id, check=False)

    @property
    def order(self) -> int:
        return self.presentation.order

    @property
    def prime(self) -> int:
        return self.presentation.prime

    @property
    def short_id(self) -> str:
        return self.id.split(":", 1)[-1]


# ---------------------------------------------------------------------------
# Built-in constructors


def _pres(p: int, n: int, powers=None, comms=None) -> PcPresentation:
    zero = [0] * n
    power_rhs = [tuple(zero)] * n
    for i, w in (powers or {}).items():
        power_rhs[i] = tuple(w)
    return PcPresentation(p, n, tuple(power_rhs), {k: tuple(v) for k, v in (comms or {}).items()})


def _chain_word(a: int, offset: int, m: int, p: int, n: int) -> List[int]:
    """Exponent vector of r^a when r, r^p, ..., r^(p^(m-1)) sit at offset.."""
    w = [0] * n
    a %= p**m
    for t in range(m):
        a, w[offset + t] = divmod(a, p)
    return w


def abelian(partition: Sequence[int], p: int) -> PcPresentation:
    """C_{p^e1} x C_{p^e2} x ... for a partition (e1, e2, ...)."""
    parts = [int(e) for e in partition if int(e) > 0]
    n = sum(parts)
    if n == 0:
        raise ValueError("partition must be nonempty")
    powers = {}
    pos = 0
    for e in parts:
        for t in range(e - 1):
            w = [0] * n
            w[pos + t + 1] = 1
            powers[pos + t] = w
        pos += e
    return _pres(p, n, powers)


def cyclic(p: int, e: int = 1) -> PcPresentation:
    return abelian([e], p)


def extraspecial(p: int, exponent: int | None = None) -> PcPresentation:
    """Extraspecial group of order p^3 (p odd) of exponent p or p^2."""
    if p == 2:
        raise ValueError("use dihedral(3) / quaternion(3) for p = 2")
    exponent = exponent or p
    if exponent == p:
        return _pres(p, 3, comms={(1, 0): [0, 0, 1]})
    if exponent == p * p:
        return _pres(p, 3, powers={0: [0, 0, 1]}, comms={(1, 0): [0, 0, 1]})
    raise ValueError(f"exponent must be {p} or {p * p}")


def group_J() -> PcPresentation:
    """The maximal-class group of order 81 with all maximal subgroups powerful."""
    return _pres(
        3,
        4,
        powers={0: [0, 0, 0, 1], 1: [0, 0, 0, 2]},
        comms={(1, 0): [0, 0, 1, 0], (2, 0): [0, 0, 0, 1]},
    )


def metacyclic_27() -> PcPresentation:
    """<x, y | x^3, y^9, [x, y] = y^3> on pc generators x, y, y^3."""
    return _pres(3, 3, powers={1: [0, 0, 1]}, comms={(1, 0): [0, 0, 2]})


def _two_group(k: int, kind: str) -> PcPresentation:
    n, m = k, k - 1
    comms = {}
    for t in range(m):
        r_m = 2**t
        if kind == "semidihedral":
            a = r_m * (2 ** (k - 2) - 2)
        else:
            a = -2 * r_m
        w = _chain_word(a, 1, m, 2, n)
        if any(w):
            comms[(1 + t, 0)] = w
    powers = {}
    for t in range(m - 1):
        w = [0] * n
        w[2 + t] = 1
        powers[1 + t] = w
    if kind == "quaternion":
        w = [0] * n
        w[n - 1] = 1
        powers[0] = w
    return _pres(2, n, powers, comms)


def dihedral(k: int) -> PcPresentation:
    """Dihedral group of order 2^k (k >= 2)."""
    if k < 2:
        raise ValueError("dihedral 2-groups need k >= 2")
    return _two_group(k, "dihedral")


def quaternion(k: int) -> PcPresentation:
    """Generalised quaternion group of order 2^k (k >= 3)."""
    if k < 3:
        raise ValueError("quaternion groups need k >= 3")
    return _two_group(k, "quaternion")


def semidihedral(k: int) -> PcPresentation:
    """Semidihedral group of order 2^k (k >= 4)."""
    if k < 4:
        raise ValueError("semidihedral groups need k >= 4")
    return _two_group(k, "semidihedral")


BUILTIN_NAMES = (
    "J",
    "B23",
    "C9:C3",
    "C3xC9",
    "extraspecial-3-exp3",
    "extraspecial-3-exp9",
    "extraspecial-5-exp5",
    "Q8",
    "D8",
    "cyclic",
    "abelian",
    "extraspecial",
    "dihedral",
    "quaternion",
    "semidihedral",
)


def builtin(name: str, *params, p: int | None = None) -> CorpusEntry:
    """Construct a named group.

    Fixed names: ``J``, ``B23`` (the free 2-generator exponent-3 group),
    ``C9:C3``, ``C3xC9``, ``Q8``, ``D8``, ``extraspecial-<p>-exp<e>``.
    Families take parameters: ``abelian([2, 1], p=3)`` (or ``abelian(2, 1, p=3)``), ``cyclic(e, p=3)``,
    ``extraspecial(exponent, p=5)``, ``dihedral(k)``, ``quaternion(k)``,
    ``semidihedral(k)``.
    """
    m = re.fullmatch(r"extraspecial-(\d+)-exp(\d+)", name)
    if name == "J":
        pres = group_J()
    elif name == "B23":
        pres = extraspecial(3, 3)
    elif name == "C9:C3":
        pres = metacyclic_27()
    elif name == "C3xC9":
        pres = abelian([2, 1], 3)
    elif name == "Q8":
        pres = quaternion(3)
    elif name == "D8":
        pres = dihedral(3)
    elif m:
        pres = extraspecial(int(m.group(1)), int(m.group(2)))
    elif name == "abelian":
        if not params:
            raise ValueError("abelian needs a partition")
        part = params[0] if len(params) == 1 and isinstance(params[0], (list, tuple)) else params
        pres = abelian([int(x) for x in part], p or 3)
    elif name == "cyclic":
        pres = cyclic(p or 3, params[0] if params else 1)
    elif name == "extraspecial":
        pres = extraspecial(p or 3, params[0] if params else None)
    elif name in ("dihedral", "quaternion", "semidihedral"):
        if not params:
            raise ValueError(f"{name} needs k (order 2^k)")
        pres = {"dihedral": dihedral, "quaternion": quaternion, "semidihedral": semidihedral}[name](
            int(params[0])
        )
    else:
        raise ValueError(f"unknown builtin {name!r}")
    suffix = ""
    if params or p is not None:
        bits = [str(list(x)) if isinstance(x, (list, tuple)) else str(x) for x in params]
        if p is not None:
            bits.append(f"p={p}")
        suffix = "(" + ",".join(bits) + ")"
    ok, failures = check_consistency(pres)
    if not ok:
        raise RuntimeError(f"builtin {name} is inconsistent: {failures}")
    return CorpusEntry(f"builtin:{name}{suffix}", pres)


# ---------------------------------------------------------------------------
# Catalogs


def _parse_value(v: str):
    low = v.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(v)
    except ValueError:
        return v


def parse_manifest(text: str) -> Dict[str, Dict[str, Any]]:
    """``id key=value ...`` records; repeated ids merge."""
    out: Dict[str, Dict[str, Any]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        gid, *pairs = line.split()
        rec = out.setdefault(gid, {})
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep:
                raise ValueError(f"manifest line {lineno}: expected key=value, got {pair!r}")
            rec[key] = _parse_value(value)
    return out


def load_catalog(path, prefix: str = "catalog") -> List[CorpusEntry]:
    """Load every ``<order>-<index>.pcp`` file in a directory.

    All files are parsed and consistency-checked; any failure, or a manifest
    id without a loadable file, rejects the whole catalog.
    """
    path = Path(path)
    manifest_path = path / "MANIFEST.txt"
    manifest = parse_manifest(manifest_path.read_text()) if manifest_path.exists() else {}
    problems = []
    entries = []
    files = sorted(
        (f for f in path.iterdir() if f.suffix == ".pcp"),
        key=lambda f: tuple(int(x) for x in _FILE_RE.match(f.name).groups())
        if _FILE_RE.match(f.name)
        else (0, 0),
    )
    loaded = set()
    for f in files:
        if not _FILE_RE.match(f.name):
            problems.append(f"{f.name}: file name is not <order>-<index>.pcp")
            continue
        gid = f.stem
        try:
            pres = parse_presentation(f.read_text())
        except PresentationError as exc:
            problems.append(f"{f.name}: {exc}")
            continue
        ok, failures = check_consistency(pres)
        if not ok:
            problems.append(f"{f.name}: inconsistent ({failures[0]})")
            continue
        if int(_FILE_RE.match(f.name).group(1)) != pres.order:
            problems.append(f"{f.name}: presentation has order {pres.order}")
            continue
        entries.append(CorpusEntry(f"{prefix}:{gid}", pres, dict(manifest.get(gid, {})), f))
        loaded.add(gid)
    for gid in manifest:
        if gid not in loaded and not any(p.startswith(f"{gid}.pcp") for p in problems):
            problems.append(f"{gid}: listed in manifest but no file")
    if problems:
        raise CatalogError(problems)
    return entries


def load_corpus(paths: Iterable, prefix: str | None = None) -> List[CorpusEntry]:
    out: List[CorpusEntry] = []
    seen = set()
    for p in paths:
        p = Path(p)
        pre = prefix or ("fixture" if p.name == "fixtures" else "catalog")
        for e in load_catalog(p, pre):
            if e.id in seen:
                continue
            seen.add(e.id)
            out.append(e)
    return out


def write_pcp(entry: CorpusEntry, path) -> None:
    Path(path).write_text(entry.presentation.to_text())


# ---------------------------------------------------------------------------
# Reports


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _flatten(row: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested dicts become dotted columns; lists become ';'-joined cells."""
    out: Dict[str, Any] = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(json.dumps(x) if isinstance(x, (dict, list)) else str(x) for x in v)
        else:
            out[key] = v
    return out


def save_report(records: Iterable, path, summary: Dict[str, Any] | None = None, csv_path=None) -> None:
    """Write newline-delimited JSON records followed by a summary record."""
    rows = [_jsonable(r.to_record() if hasattr(r, "to_record") else r) for r in records]
    with open(path, "w") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": _jsonable(summary or {"records": len(rows)})}, sort_keys=True) + "\n")
    if csv_path is not None:
        flat = [_flatten(row) for row in rows]
        fields = sorted({k for row in flat for k in row})
        with open(csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            w.writerows(flat)


def read_report(path) -> tuple[List[Dict[str, Any]], Dict[str, Any]]:
    rows = [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]
    summary = rows.pop()["summary"] if rows and "summary" in rows[-1] else {}
    return rows, summary
