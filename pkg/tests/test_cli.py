from __future__ import annotations

import json

import pytest

from modlie.cli import h1_main, paperlab_main, parabolic_main, rootsys_main, sl2_main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_rootsys_info(capsys):
    assert rootsys_main(["info", "G2"]) == 0
    out = _json(capsys)
    assert out["highest_root"] == [3, 2] and out["coxeter_number"] == 6


def test_rootsys_rejects_bad_type(capsys):
    with pytest.raises(SystemExit):
        rootsys_main(["info", "E9"])


def test_sl2_extend(capsys):
    assert sl2_main(["extend", "--type", "A1", "--p", "5", "--e", "e[1]"]) == 0
    out = _json(capsys)
    assert out["status"] == "ok"
    assert out["triples"] == [{"e": "e[1]", "h": "h[1]", "f": "e[-1]"}]


def test_sl2_extend_over_q(capsys):
    assert sl2_main(["extend", "--type", "G2", "--e", "e[1,0]+e[0,1]"]) == 0
    out = _json(capsys)
    assert out["e_partition"] == "11+3"
    assert len(out["triples"]) == 1


def test_sl2_no_triple(capsys):
    assert sl2_main(["extend", "--type", "G2", "--p", "3", "--e", "e[2,1]+e[3,2]"]) == 1
    assert _json(capsys)["status"] == "no_triple"


def test_parabolic_layers(capsys):
    assert parabolic_main(["layers", "--type", "F4", "--J", "2,3,4"]) == 0
    assert _json(capsys) == [{"level": 1, "dim": 14}, {"level": 2, "dim": 1}]


def test_h1_cli(capsys):
    assert h1_main(["--p", "5", "--module", "L(3)"]) == 0
    assert _json(capsys) == {"z1": 6, "b1": 4, "h1": 2}
    assert h1_main(["--p", "5", "--module", "L(1)*xL(2)", "--restricted"]) == 0
    assert _json(capsys)["h1"] > 0


def test_h1_cli_bad_module(capsys):
    with pytest.raises(SystemExit):
        h1_main(["--p", "5", "--module", "M(3)"])


def test_paperlab_cli(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert paperlab_main(["run", "--only", "C2,C3", "--json", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[:2] for line in lines] == [["C2", "pass"], ["C3", "pass"]]
    data = json.loads(path.read_text())
    assert [r["id"] for r in data["reports"]] == ["C2", "C3"]


def test_paperlab_cli_unknown_id(capsys):
    assert paperlab_main(["run", "--only", "C99"]) == 1
    assert "error" in capsys.readouterr().out
