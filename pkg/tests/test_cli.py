import json
import subprocess
import sys

import pytest
import yaml

from conftest import CORPUS, DATA
from legch.cli import main

TREFOIL = str(CORPUS / "trefoil.front")


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_augs_lists_five(capsys):
    code, out, _ = call(capsys, "augs", TREFOIL, "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["count"] == 5 and rep["augmentations"] == ["001", "011", "100", "110", "111"]


def test_seidel_trefoil_passes(capsys):
    code, out, _ = call(capsys, "seidel", TREFOIL, "--aug", "4", "--betti-l", "0:1,1:2", "--n", "1")
    assert code == 0
    rep = yaml.safe_load(out)
    assert rep["result"] == "PASS" and rep["augmentation"] == {"index": 4, "bits": "111"}


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _, err = call(capsys, "dga", str(tmp_path / "missing.front"))
    assert code == 2 and "NOFILE" in err


def test_failed_check_exits_one(capsys):
    code, out, _ = call(capsys, "seidel", "unknot", "--betti-l", "0:1,1:1", "--format", "json")
    rep = json.loads(out)
    assert code == 1 and rep["result"] == "FAIL" and rep["deltas"] == {"0": -1}


def test_budget_exits_three(capsys):
    code, out, _ = call(capsys, "dga", str(DATA / "double_cover.front"), "--max-mult", "1",
                        "--format", "json")
    assert code == 3 and json.loads(out)["error"]["code"] == "BUDGET"


@pytest.mark.parametrize("argv", [
    ["seidel", "trefoil"],                      # --betti-l missing
    ["linhom", "trefoil", "--aug", "9"],        # index out of range
    ["dga", "trefoil", "--max-mult", "0"],
    ["twocopy", "trefoil"],                     # --blocks missing
    ["seidel", "trefoil", "--betti-l", "zero"],
    ["frobnicate", "trefoil"],
])
def test_input_errors_exit_two(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_declared_spaces_checked_against_front(capsys):
    # the trefoil fixture declares the complex of augmentation 111; 001 differs
    code, out, _ = call(capsys, "twocopy", "trefoil", "--aug", "0", "--blocks", "trefoil_twocopy",
                        "--format", "json")
    assert code == 2 and json.loads(out)["error"]["code"] == "SHAPE"


COMMANDS = [
    ["dga", "trefoil", "--discs"],
    ["dga", "split_link"],
    ["augs", "trefoil"],
    ["linhom", "trefoil"],
    ["seidel", "trefoil", "--aug", "4", "--betti-l", "0:1,1:2"],
    ["duality", "unknot"],
    ["duality", "trefoil", "--aug", "2"],
    ["twocopy", "--blocks", "s1_empty"],
    ["twocopy", "trefoil", "--aug", "4", "--blocks", "trefoil_twocopy"],
    ["wrapped", "--blocks", "unknot_wrapped"],
    ["wrapped", "trefoil", "--aug", "4", "--blocks", "trefoil_wrapped"],
    ["dga", "nowhere"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_text_and_json_carry_same_data(capsys, argv):
    c1, text, _ = call(capsys, *argv)
    c2, js, _ = call(capsys, *argv, "--format", "json")
    assert c1 == c2
    if c1 == 2:
        assert json.loads(js)["error"]["code"] == "NOFILE"
        return
    assert yaml.safe_load(text) == json.loads(js)


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_reports_are_repeatable(capsys, argv):
    first = call(capsys, *argv, "--format", "json")
    second = call(capsys, *argv, "--format", "json")
    assert first == second


def test_twocopy_reports(capsys):
    _, out, _ = call(capsys, "twocopy", "--blocks", "s1_empty", "--format", "json")
    rep = json.loads(out)
    assert rep["variants"]["INFINITY"]["homology"] == {"-1": 1, "0": 1}
    assert rep["vanishing"] == "FAIL"
    code, out, _ = call(capsys, "twocopy", "trefoil", "--aug", "4", "--blocks", "trefoil_twocopy",
                        "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["vanishing"] == "PASS"
    assert rep["variants"]["INFINITY"]["dimension"] == 12


def test_wrapped_report(capsys):
    code, out, _ = call(capsys, "wrapped", "trefoil", "--aug", "4", "--blocks", "trefoil_wrapped",
                        "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["acyclic"] and rep["quasi_iso"]
    assert rep["morse_cone"]["result"] == "PASS"


def test_dga_report_contents(capsys):
    _, out, _ = call(capsys, "dga", "trefoil", "--format", "json")
    rep = json.loads(out)
    assert rep["gradings"] == {"a1": 1, "a2": 1, "b1": 0, "b2": 0, "b3": 0}
    assert rep["components"] == [{"component": 1, "tb": 1, "rot": 0}]
    assert rep["d_squared_zero"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "legch", "augs", "unknot", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 1
