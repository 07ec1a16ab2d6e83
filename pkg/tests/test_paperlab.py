from __future__ import annotations

import json

import pytest

from modlie.chevalley import lie_algebra
from modlie.paperlab import reports_json, run_all, run_check
from modlie.paperlab.datafile import DataFileError, available_ids, load_check_spec, parse_datafile
from modlie.paperlab.runner import REPORT_VERSION, select_ids
from modlie.paperlab.signs import count_classes, search_signs, sign_classes

GOOD = """\
# comment
id = X1
convention = bourbaki
types = G2
primes = 5, 7
e = e[1,0]+e[0,1]
expect.flag = true [given]
expect.count = 3 [derived]
expect.name = 4+1 [trivial]
"""


def test_parse_datafile():
    spec = parse_datafile(GOOD)
    assert spec.id == "X1" and spec.types == ("G2",) and spec.primes == (5, 7)
    assert spec.expected == {"flag": True, "count": 3, "name": "4+1"}
    assert spec.tags == {"flag": "given", "count": "derived", "name": "trivial"}
    assert spec.elements()["e"] == "e[1,0]+e[0,1]"


@pytest.mark.parametrize(
    "text",
    [
        GOOD.replace("convention = bourbaki\n", ""),
        GOOD.replace("id = X1\n", ""),
        GOOD + "expect.flag = false [given]\n",
        GOOD + "e = e[1,0]\n",
        GOOD + "expect.other = 1\n",
        GOOD + "expect.other = 1 [guess]\n",
        GOOD + "no equals sign\n",
        GOOD.replace("primes = 5, 7", "primes = five"),
    ],
    ids=["no_convention", "no_id", "dup_expect", "dup_key", "untagged", "bad_tag", "no_equals", "bad_primes"],
)
def test_datafile_errors(text):
    with pytest.raises(DataFileError):
        parse_datafile(text)


def test_shipped_data_files():
    ids = available_ids()
    assert ids == [f"C{i}" for i in range(1, 13)]
    for i in ids:
        spec = load_check_spec(i)
        assert spec.data["convention"] == "bourbaki"
        assert spec.expected


def test_unknown_check_is_an_error_report():
    rep = run_check("C99")
    assert rep.status == "error" and not rep.passed
    assert "C99" in rep.error
    reps = run_all(only=["C99"])
    assert [r.status for r in reps] == ["error"]


def test_selection_filters():
    assert select_ids(type_="G2") == ["C1", "C7"]
    assert select_ids(p=11) == ["C1", "C2", "C3", "C8", "C10"]
    assert select_ids(prefix="C1") == ["C1", "C10", "C11", "C12"]
    assert select_ids(only=["C3", "C2"]) == ["C2", "C3"]


@pytest.mark.parametrize("check_id", ["C2", "C3", "C7", "C8", "C9", "C10", "C11", "C12"])
def test_fast_checks_pass(check_id):
    rep = run_check(check_id)
    assert rep.error is None, rep.error
    assert rep.passed, rep.mismatches


def test_row_selection_narrows_expectations():
    rep = run_check("C3", p=7)
    assert set(rep.expected) == {"7.h1"}
    assert rep.passed


def test_json_report_schema_and_reproducibility():
    first = json.loads(reports_json(run_all(only=["C2", "C3", "C11"])))
    second = json.loads(reports_json(run_all(only=["C2", "C3", "C11"])))
    assert first["version"] == REPORT_VERSION
    keys = {"id", "status", "computed", "expected", "runtime_ms", "notes", "mismatches", "error"}
    for r in first["reports"]:
        assert set(r) == keys
    for a, b in zip(first["reports"], second["reports"]):
        a.pop("runtime_ms")
        b.pop("runtime_ms")
        assert a == b


def test_sign_classes():
    L = lie_algebra("A2", 5)
    independent = [L.parse("e[1,0]+e[0,1]")]
    assert count_classes(L, independent) == 1
    dependent = [L.parse("e[1,0]+e[0,1]+e[1,1]")]
    classes = list(sign_classes(L, dependent))
    assert count_classes(L, dependent) == len(classes) == 2
    assert classes[0].flipped == ()
    found = search_signs(L, dependent, lambda xs: xs[0][L.rs.index((1, 1))] == 4)
    assert found is not None and len(found[0].flipped) == 1
