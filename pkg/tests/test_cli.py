import json
import subprocess
import sys

import pytest

from ringlab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["analyze", "zmod:12"], 0),
    (["analyze", "gr:2^2,2"], 0),
    (["analyze", "bell"], 0),
    (["analyze", "corbas:2,2,1"], 1),
    (["analyze", "zmod:x"], 2),
    (["analyze", "corbas:4,2,0"], 2),
    (["analyze", "zmod:100", "--max-size", "50"], 2),
    (["analyze"], 2),
    (["bogus"], 2),
    (["oeis", "--limit", "1"], 2),
    (["witness", "zmod:4", "--nilpotent", "2"], 2),
    (["witness", "mat:2^1,2", "--nilpotent", "1", "0", "0", "1"], 2),
    (["witness", "mat:2^1,2", "--nilpotent", "0", "1", "0"], 2),
    (["witness", "mat:2^1,2", "--nilpotent", "0", "0", "0", "0"], 2),
    (["witness", "mat:2^1,2", "--nilpotent", "0", "x", "0", "0"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_analyze_json(capsys):
    code, out, _ = run(["analyze", "zmod:9", "--json"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["schema_version"] == 1
    assert (d["measured"]["mu0"], d["measured"]["mu1"], d["measured"]["muP"]) == (2, 6, 2)
    assert d["measured"]["period_subgroups"]["3"] == [0, 3, 6]


def test_analyze_text_layout(capsys):
    _, out, _ = run(["analyze", "zmod:12"], capsys)
    assert "measured" in out and "predicted" in out and "all match" in out


def test_input_error_message(capsys):
    code, _, err = run(["analyze", "gr:2^2"], capsys)
    assert code == 2 and "position" in err


def test_oeis_b_file(capsys):
    code, out, err = run(["oeis", "--limit", "10"], capsys)
    assert code == 0
    assert out.splitlines() == ["2 1", "3 2", "4 3", "5 4", "6 2", "7 6", "8 4", "9 7", "10 4"]
    assert "9/9" in err
    code, out, _ = run(["oeis", "--limit", "16", "--json"], capsys)
    d = json.loads(out)
    assert d["ok"] and d["values"]["16"] == 7


def test_witness_output(capsys):
    code, out, _ = run(["witness", "mat:2^1,2", "--nilpotent", "0", "0", "1", "0"], capsys)
    assert code == 0
    assert "X = [[0, 1], [1, 0]]" in out
    code, out, _ = run(["witness", "mat:3^1,3", "--nilpotent", "0,1,0,0,0,1,0,0,0", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["guarantee_holds"] and d["schema_version"] == 1


def test_scan_small(capsys):
    code, out, _ = run(["scan", "--max-size", "16", "--json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["violations"] == [] and d["max_size"] == 16


def test_tables_exit_reflects_mismatch(capsys):
    code, out, _ = run(["tables"], capsys)
    assert code == 1
    assert "corbas:2,2,1" in out.splitlines()[-1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ringlab.cli", "analyze", "zmod:8", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["measured"]["periodic_exponents"] == [2, 4]
