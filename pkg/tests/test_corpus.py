from __future__ import annotations

import csv
import shutil

import pytest

from pcgroups.corpus import (
    DATA_DIR,
    CatalogError,
    builtin,
    load_catalog,
    load_corpus,
    parse_manifest,
    read_report,
    save_report,
    write_pcp,
)
from pcgroups.properties import build_report

J_TEXT = """p 3
ngens 4
power 1 : 4^1
comm 2 1 : 3^1
comm 3 1 : 4^1
"""


def test_builtins_are_consistent():
    for name, params in [("J", ()), ("B23", ()), ("C9:C3", ()), ("Q8", ()), ("D8", ())]:
        e = builtin(name, *params)
        assert e.id == f"builtin:{name}"
    assert builtin("abelian", [2, 1], p=3).order == 27
    assert builtin("abelian", 2, 1, p=3).order == 27
    assert builtin("dihedral", 4).order == 16
    assert builtin("extraspecial-5-exp25").order == 125
    with pytest.raises(ValueError):
        builtin("Z7")


def test_catalog_sizes(three_groups, two_groups):
    by_order = {}
    for e in three_groups:
        by_order[e.order] = by_order.get(e.order, 0) + 1
    assert by_order[27] == 5 and by_order[81] == 15 and by_order[243] == 67
    assert sum(e.order == 64 for e in two_groups) == 267


def test_fixtures_load(fixtures_corpus):
    ids = [e.short_id for e in fixtures_corpus]
    assert "64-31" in ids and "81-10" in ids
    (e,) = [e for e in fixtures_corpus if e.short_id == "64-31"]
    assert e.prime == 2 and e.order == 64
    assert e.expected["cond_power_1"] is False
    assert all(e.id.startswith("fixture:") for e in fixtures_corpus)


def test_empty_directory(tmp_path):
    assert load_catalog(tmp_path) == []
    assert load_corpus([tmp_path]) == []


def _one_group_dir(tmp_path, text=J_TEXT, name="81-1.pcp"):
    (tmp_path / name).write_text(text)
    return tmp_path


def test_load_single_file(tmp_path):
    (e,) = load_catalog(_one_group_dir(tmp_path))
    assert e.id == "catalog:81-1" and e.group.order == 81


@pytest.mark.parametrize(
    "name, text, needle",
    [
        ("group.pcp", J_TEXT, "file name"),
        ("27-1.pcp", J_TEXT, "order 81"),
        ("27-1.pcp", "p 3\nngens 3\npower 1 : 2^1\ncomm 2 1 : 3^1\n", "inconsistent"),
        ("81-1.pcp", "p 3\nngens 4\npower 9 : 1^1\n", "81-1.pcp"),
    ],
)
def test_catalog_rejections(tmp_path, name, text, needle):
    _one_group_dir(tmp_path, text, name)
    with pytest.raises(CatalogError) as info:
        load_catalog(tmp_path)
    assert any(needle in p for p in info.value.problems)


def test_manifest_without_file(tmp_path):
    _one_group_dir(tmp_path)
    (tmp_path / "MANIFEST.txt").write_text("81-1 class=3\n81-2 class=2\n")
    with pytest.raises(CatalogError, match="81-2"):
        load_catalog(tmp_path)


def test_one_bad_file_rejects_catalog(tmp_path):
    src = DATA_DIR / "catalog" / "3-groups"
    for f in sorted(src.glob("27-*.pcp")):
        shutil.copy(f, tmp_path / f.name)
    assert len(load_catalog(tmp_path)) == 5
    (tmp_path / "27-6.pcp").write_text("p 3\nngens 3\npower 1 : 2^1\ncomm 2 1 : 3^1\n")
    with pytest.raises(CatalogError):
        load_catalog(tmp_path)


def test_manifest_parsing():
    m = parse_manifest("# comment\n81-10 m_1=true class=3 note=x\n81-10 d=2\n")
    assert m == {"81-10": {"m_1": True, "class": 3, "note": "x", "d": 2}}
    with pytest.raises(ValueError, match="line 1"):
        parse_manifest("81-10 broken\n")


def test_write_pcp_round_trip(tmp_path, fixtures_corpus):
    for e in fixtures_corpus:
        out = tmp_path / "a" / f"{e.short_id}.pcp"
        out.parent.mkdir(exist_ok=True)
        write_pcp(e, out)
        first = out.read_bytes()
        (again,) = [x for x in load_catalog(out.parent) if x.short_id == e.short_id]
        assert again.presentation == e.presentation
        write_pcp(again, out)
        assert out.read_bytes() == first
        out.unlink()


def test_report_persistence(tmp_path, J):
    rep = build_report(J, "builtin:J")
    path, csv_path = tmp_path / "r.jsonl", tmp_path / "r.csv"
    save_report([rep], path, {"groups": 1}, csv_path=csv_path)
    rows, summary = read_report(path)
    assert summary == {"groups": 1}
    assert rows[0]["group_id"] == "builtin:J"
    assert rows[0]["conditions"]["1"] == [True, True, False]
    with open(csv_path) as fh:
        (row,) = list(csv.DictReader(fh))
    assert row["conditions.1"] == "True;True;False"
    assert row["m_levels.1"] == "True"
