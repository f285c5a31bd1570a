import json
import subprocess
import sys

import pytest

from grpdhopf.cli import main
from grpdhopf.io import dumps, groupoid_to_json, hopf_to_json
from grpdhopf.repfun import repfun_concrete

from conftest import Q, member


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def run_json(capsys, *argv):
    status, out = run(capsys, *argv, "--output", "json")
    return status, json.loads(out)


def test_round_trip_pair(capsys):
    status, rep = run_json(capsys, "round-trip", "corpus:pair_2")
    assert status == 0 and rep["ok"] and rep["failures"] == []
    assert all(rep["hopf_axioms"].values())


def test_validate_mutated_table(capsys, tmp_path):
    g = member("pair_2")
    doc = groupoid_to_json(g)
    first, second = doc["compose"][0], doc["compose"][1]
    first[2], second[2] = second[2], first[2]
    path = tmp_path / "bad.json"
    path.write_text(dumps(doc))
    status, out = run(capsys, "validate", str(path))
    assert status == 1
    assert "witness" in out and "ok: False" in out


def test_repfun_dump(capsys):
    status, rep = run_json(capsys, "repfun", "corpus:band_2_z2")
    assert status == 0
    assert len(rep["hopf"]["total"]["basis"]) == 8
    assert sorted(rep["hopf"]["maps"]) == ["antipode", "comult", "counit", "source", "target"]


def test_validate_hopf_file(capsys, tmp_path):
    path = tmp_path / "h.json"
    path.write_text(dumps(hopf_to_json(repfun_concrete(member("z3"), Q))))
    status, rep = run_json(capsys, "validate", str(path))
    assert status == 0 and rep["kind"] == "hopf" and all(rep["clauses"].values())


def test_components_and_decompose(capsys):
    status, rep = run_json(capsys, "components", "corpus:union_pair2_z2")
    assert status == 0 and not rep["transitive"] and len(rep["components"]) == 2
    status, rep = run_json(capsys, "decompose", "corpus:band_2_z2", "--object", "1")
    assert status == 0 and rep["bijective"] and rep["total_dim"] == 8
    status, rep = run_json(capsys, "decompose", "corpus:unit_3")
    assert status == 1 and rep["components"] == [["0"], ["1"], ["2"]]


def test_characters_and_hom_check(capsys):
    status, rep = run_json(capsys, "characters", "corpus:pair_2", "--field", "fp:5")
    assert status == 0 and (rep["objects"], rep["arrows"]) == (2, 4)
    status, rep = run_json(capsys, "hom-check", "corpus:z2", "corpus:z2")
    assert status == 0 and rep["groupoid_morphisms"] == 2


def test_exit_codes(capsys, tmp_path):
    assert main(["validate", "corpus:pair_2", "--field", "fp:4"]) == 2
    assert main(["hom-check", "corpus:z2"]) == 2
    assert main(["validate", "corpus:nope"]) == 3
    (tmp_path / "junk.json").write_text("{not json")
    assert main(["validate", str(tmp_path / "junk.json")]) == 3
    assert main(["hom-check", "corpus:band_2_z2", "corpus:z2", "--guard", "4"]) == 4
    h = hopf_to_json(repfun_concrete(member("z2"), Q))
    h["total"]["split_witness"] = None
    (tmp_path / "nowit.json").write_text(dumps(h))
    assert main(["characters", str(tmp_path / "nowit.json")]) == 5
    capsys.readouterr()


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate", "x"])
    assert err.value.code == 2


def test_json_output_is_deterministic(capsys):
    outs = [run(capsys, "round-trip", "corpus:band_2_z2", "--output", "json", "--seed", "3")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grpdhopf.cli", "validate", "corpus:pair_3", "--output", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
