"""Command-line front end: inspect one group or run verification suites.

Exit codes: 0 every suite passed, 1 violations found, 2 a suite was skipped
(missing fixtures or nothing to check), 3 input or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Sequence

from .corpus import DATA_DIR, BUILTIN_NAMES, CatalogError, CorpusEntry, builtin, load_corpus, save_report
from .group import DEFAULT_ENUM_CAP, PcGroup
from .isomorphism import DEFAULT_ISO_CAP
from .pcp import parse_presentation
from .properties import DEFAULT_REGULAR_CAP, DEFAULT_SECTION_CAP, PropertyReport, build_report
from .suites import FAIL, SKIPPED, SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_VIOLATIONS, EXIT_SKIPPED, EXIT_ERROR = 0, 1, 2, 3


def default_corpus_dirs() -> List[Path]:
    """The bundled fixtures followed by every bundled catalog."""
    return [DATA_DIR / "fixtures"] + sorted(p for p in (DATA_DIR / "catalog").iterdir() if p.is_dir())


def render_report(rep: PropertyReport) -> str:
    def tri(v):
        return "skipped" if v is None else str(v).lower()

    lines = [
        f"group        {rep.group_id}",
        f"order        {rep.prime}^{rep.log_order} = {rep.order}",
        f"d            {rep.d}",
        f"class        {rep.nilpotency_class}",
        f"exponent     {rep.exponent}",
        f"powerful     {tri(rep.is_powerful)}",
        f"potent       {tri(rep.is_potent)}",
        f"regular      {tri(rep.is_regular)}",
    ]
    for i, v in rep.m_levels.items():
        lines.append(f"M_{i:<10} {tri(v)}")
    for i, (c1, c2, c3) in rep.conditions.items():
        lines.append(f"level {i:<6} power={tri(c1)} omega={tri(c2)} index={tri(c3)}")
    lines.append(f"P1           {tri(rep.p1)}")
    lines.append(f"P2           {tri(rep.p2)}")
    return "\n".join(lines)


def _report(entry: CorpusEntry, args) -> PropertyReport:
    G = PcGroup(entry.presentation, name=entry.id, check=False, enum_cap=args.enum_cap)
    return build_report(
        G,
        entry.id,
        m_range=range(1, args.m_max + 1),
        regular_cap=args.regular_cap,
        section_cap=args.section_cap,
        sections=not args.no_sections,
    )


def _emit(rep: PropertyReport, args) -> int:
    if args.json:
        print(json.dumps(rep.to_record(), sort_keys=True))
    else:
        print(render_report(rep))
    if args.out:
        save_report([rep], args.out, csv_path=args.csv)
    return EXIT_OK


def cmd_check(args) -> int:
    text = Path(args.file).read_text()
    pres = parse_presentation(text)
    PcGroup(pres)  # raises on an inconsistent presentation
    entry = CorpusEntry(f"file:{Path(args.file).stem}", pres, {}, Path(args.file))
    return _emit(_report(entry, args), args)


def _param(s: str):
    try:
        return int(s)
    except ValueError:
        return s


def cmd_info(args) -> int:
    entry = builtin(args.name, *[_param(x) for x in args.params], p=args.p)
    return _emit(_report(entry, args), args)


def _options(args) -> SuiteOptions:
    return SuiteOptions(
        enum_cap=args.enum_cap,
        iso_cap=args.iso_cap,
        section_cap=args.section_cap,
        regular_cap=args.regular_cap,
        seed=args.seed,
        jobs=args.jobs,
    )


def _corpus(args) -> List[CorpusEntry]:
    dirs = args.corpus or default_corpus_dirs()
    corpus = load_corpus(dirs)
    if args.with_builtins:
        corpus = [builtin(n) for n in ("J", "B23", "C9:C3", "C3xC9", "Q8", "D8")] + corpus
    return corpus


def _run(suites: Sequence[str], args) -> int:
    corpus = _corpus(args)
    opts = _options(args)
    results = []
    for s in suites:
        r = run_suite(s, corpus, opts)
        results.append(r)
        print(f"{r.suite:<14} {r.status.upper():<8} checked={r.checked:<5} violations={len(r.violations):<3} {r.wall_time:.2f}s")
        for note in r.notes:
            print(f"    note: {note}")
        for v in r.violations[: args.show]:
            print(f"    {v.group_id}  {v.predicate}  witness={[list(w) for w in v.witness]}  {v.detail}")
    summary = {
        "corpus": len(corpus),
        "seed": opts.seed,
        "options": vars(opts),
        "status": {r.suite: r.status for r in results},
        "violations": {r.suite: len(r.violations) for r in results},
    }
    if args.out:
        save_report(results, args.out, summary=summary, csv_path=args.csv)
    if any(r.status == FAIL for r in results):
        return EXIT_VIOLATIONS
    if any(r.status == SKIPPED for r in results):
        return EXIT_SKIPPED
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = [s for s in SUITES if s != "oracle"] if args.suite == "all" else [args.suite]
    return _run(suites, args)


def cmd_oracle(args) -> int:
    return _run(["oracle"], args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcgroups",
        description="Finite p-group engine and power-structure verification.",
    )
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="largest order enumerated (default %(default)s)")
    caps.add_argument("--iso-cap", type=int, default=DEFAULT_ISO_CAP, help="largest order for isomorphism tests (default %(default)s)")
    caps.add_argument("--section-cap", type=int, default=DEFAULT_SECTION_CAP, help="largest order for P1/P2 (default %(default)s)")
    caps.add_argument("--regular-cap", type=int, default=None, help="largest order for the regularity pair search")
    caps.add_argument("--out", help="write newline-delimited JSON records here")
    caps.add_argument("--csv", help="also write a flat CSV projection here")

    report = argparse.ArgumentParser(add_help=False)
    report.add_argument("--m-max", type=int, default=2, help="report M_i for 1 <= i <= M_MAX (default %(default)s)")
    report.add_argument("--no-sections", action="store_true", help="skip P1/P2")
    report.add_argument("--json", action="store_true", help="print the report as JSON")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[caps, report], help="report on a PCP file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check, regular_default=DEFAULT_REGULAR_CAP)

    p = sub.add_parser("info", parents=[caps, report], help="report on a built-in group")
    p.add_argument("name", help="one of: " + ", ".join(BUILTIN_NAMES))
    p.add_argument("params", nargs="*", help="family parameters, e.g. 'abelian 2 1 --p 3'")
    p.add_argument("--p", type=int, default=None, help="prime for parameterized families")
    p.set_defaults(func=cmd_info, regular_default=DEFAULT_REGULAR_CAP)

    suites = argparse.ArgumentParser(add_help=False)
    suites.add_argument("--corpus", action="append", type=Path, help="catalog directory (repeatable; default: bundled data)")
    suites.add_argument("--with-builtins", action="store_true", help="add the named built-in groups to the corpus")
    suites.add_argument("--seed", type=int, default=0, help="sampling seed (default %(default)s)")
    suites.add_argument("--jobs", type=int, default=1, help="worker processes (default %(default)s)")
    suites.add_argument("--show", type=int, default=10, help="violations printed per suite (default %(default)s)")

    p = sub.add_parser("verify", parents=[caps, suites], help="run a theorem suite over a corpus")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify, regular_default=SuiteOptions.regular_cap)

    p = sub.add_parser("oracle", parents=[caps, suites], help="cross-check fast paths against brute-force oracles")
    p.set_defaults(func=cmd_oracle, regular_default=SuiteOptions.regular_cap)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.regular_cap is None:
        args.regular_cap = args.regular_default
    try:
        return args.func(args)
    except CatalogError as exc:
        print("catalog rejected:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  {problem}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # report and map to the error exit code
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
