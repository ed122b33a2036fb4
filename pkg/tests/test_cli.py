import csv
import json
import subprocess
import sys

import pytest

from dwise.cli import CAPPED, FAILED, INVALID, OK, main
from dwise.setcore import SetFamily, dump_family


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


@pytest.fixture
def c43_file(tmp_path, c43):
    path = tmp_path / "c43.json"
    dump_family(c43, path)
    return str(path)


def test_construct_and_size(capsys, tmp_path):
    out = tmp_path / "h.json"
    code, data = run_json(capsys, "construct", "--family", "H2", "--n", "8", "--k", "4", "--d", "3", "--out", str(out))
    assert code == OK and data["k"] == 4
    assert json.loads(out.read_text()) == data
    code, data = run_json(capsys, "size", "--family", "H(2)", "--n", "12", "--k", "5", "--d", "3", "--construct")
    assert code == OK and data["size"] == data["constructed"] == 120


def test_invalid_params_exit_2(capsys):
    code, _, err = run(capsys, "size", "--family", "H5", "--n", "10", "--k", "4", "--d", "3")
    assert code == INVALID and "l > k-d+2" in err
    code, _, _ = run(capsys, "construct", "--family", "H2", "--n", "500", "--k", "4", "--d", "3")
    assert code == INVALID


def test_check(capsys, c43_file):
    code, data = run_json(capsys, "check", "--in", c43_file, "--d", "3")
    assert code == OK and data["verdict"] is True
    code, data = run_json(capsys, "check", "--in", c43_file, "--d", "4")
    assert code == FAILED and len(data["witness"]) == 4
    code, data = run_json(capsys, "check", "--in", c43_file, "--t", "2")
    assert code == OK


def test_missing_file_is_invalid(capsys, tmp_path):
    code, _, _ = run(capsys, "check", "--in", str(tmp_path / "nope.json"), "--d", "3")
    assert code == INVALID


def test_maximal_and_close(capsys, tmp_path):
    fam = SetFamily.from_sets(5, 3, [[1, 2, 3], [1, 2, 4]])
    path = tmp_path / "f.json"
    dump_family(fam, path)
    code, out, _ = run(capsys, "maximal", "--in", str(path), "--d", "3")
    assert code == FAILED and "addable" in out
    closed = tmp_path / "closed.json"
    code, _, _ = run(capsys, "maximal", "--in", str(path), "--d", "3", "--close", "--out", str(closed))
    assert code == OK
    code, _, _ = run(capsys, "maximal", "--in", str(closed), "--d", "3")
    assert code == OK


def test_closure_kernel_sunflower(capsys, c43_file):
    code, data = run_json(capsys, "closure", "--in", c43_file, "--depth", "2")
    assert code == OK and len(data["antichain"]) == 6
    code, data = run_json(capsys, "kernel", "--in", c43_file, "--X", "1")
    assert code == OK and data["degree"] == 1
    code, _, _ = run(capsys, "sunflower", "--in", c43_file, "--s", "3")
    assert code == FAILED
    code, data = run_json(capsys, "sunflower", "--in", c43_file, "--s", "2")
    assert code == OK and data["found"]


def test_bdecomp(capsys, tmp_path):
    path = tmp_path / "h.json"
    main(["construct", "--family", "H2", "--n", "10", "--k", "4", "--d", "3", "--out", str(path)])
    capsys.readouterr()
    out = tmp_path / "b.json"
    code, data = run_json(capsys, "bdecomp", "--in", str(path), "--d", "3", "--out", str(out))
    assert code == OK and set(data) == {"b1", "b2", "b3", "levels"}
    assert json.loads(out.read_text()) == data


def test_iso(capsys, tmp_path):
    paths = {}
    for f in ("G", "H3", "H2"):
        paths[f] = str(tmp_path / f"{f}.json")
        main(["construct", "--family", f, "--n", "10", "--k", "4", "--d", "3", "--out", paths[f]])
    capsys.readouterr()
    code, data = run_json(capsys, "iso", "--a", paths["G"], "--b", paths["H3"])
    assert code == OK and sorted(data["witness"]) == list(range(1, 11))
    code, data = run_json(capsys, "iso", "--a", paths["G"], "--b", paths["H2"])
    assert code == FAILED and data["invariant"]


def test_enumerate(capsys, tmp_path):
    out = tmp_path / "e.json"
    code, data = run_json(capsys, "enumerate", "--n", "6", "--k", "3", "--d", "3", "--out", str(out))
    assert code == OK and data["exhausted"] and len(data["classes"]) == 1
    code, data = run_json(capsys, "enumerate", "--n", "6", "--k", "3", "--d", "2", "--t", "2", "--allow-trivial")
    assert len(data["classes"]) == 2
    code, data = run_json(capsys, "enumerate", "--n", "6", "--k", "3", "--d", "2", "--top", "1")
    assert code == OK and len(data["classes"]) == 1


def test_enumerate_cap_exit_3(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "7", "--k", "3", "--d", "3", "--node-cap", "30")
    assert code == CAPPED and "lower bound" in out
    code, _, _ = run(capsys, "--node-cap", "30", "enumerate", "--n", "7", "--k", "3", "--d", "3")
    assert code == CAPPED


def test_rank_csv(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = run(capsys, "rank", "--k", "5", "--d", "3", "--n", "12", "--csv", str(path))
    assert code == OK and out.splitlines()[1].startswith("H(2)")
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["family", "l", "size", "rank", "tie-group"]
    assert rows[1] == ["H", "2", "120", "1", "1"]


def test_verify_order(capsys, tmp_path):
    path = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify-order", "--k", "5", "--d", "3", "--n", "12", "--json", str(path))
    assert code == OK
    data = json.loads(path.read_text())
    assert all("clause" in c for c in data["clauses"])
    code, _, _ = run(capsys, "verify-order", "--k", "5", "--d", "3", "--n", "8")
    assert code == FAILED


def test_thresholds_and_identity(capsys):
    code, data = run_json(capsys, "thresholds", "--k", "5", "--d", "3")
    assert code == OK and data["n1"] == "7644119043"
    code, data = run_json(capsys, "identity-check", "--count", "200")
    assert code == OK and data["checked"] == 200 and data["failures"] == []
    code, _, _ = run(capsys, "identity-check", "--n", "5")
    assert code == INVALID


def test_argparse_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["size", "--family", "H2"])
    assert exc.value.code == INVALID


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dwise.cli", "size", "--family", "G", "--n", "12", "--k", "5", "--d", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "|G| = 84"
