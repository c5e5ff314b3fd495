import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from reprspace.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_real_max_example(capsys):
    code, body, _ = run(capsys, "real", "max", "--set", "0,1/3,1/2", "--digits", "6")
    assert code == 0
    assert body["status"] == "Confirmed"
    assert body["value"] == "0.500000 ± 1e-6"


def test_neq_of_equal_reals_is_unknown(capsys):
    code, body, _ = run(capsys, "sep", "neq", "--space", "real", "--x", "1/3", "--y", "1/3", "--fuel", "100000")
    assert (code, body["status"]) == (2, "Unknown")


def test_neq_of_distinct_reals(capsys):
    code, body, _ = run(capsys, "sep", "neq", "--space", "real", "--x", "1/3", "--y", "1/2")
    assert (code, body["status"]) == (0, "Confirmed")


def test_subcover_example(capsys):
    code, body, _ = run(capsys, "compact", "subcover", "--example", "shifted-cylinders")
    assert code == 0
    assert body == {"N": 6, "fuel": 512, "status": "Confirmed"}


def test_isfull(capsys):
    code, body, _ = run(capsys, "compact", "isfull", "--open", 'cylinders "0,1"')
    assert code == 0 and body["depth"] == 1
    code, body, _ = run(capsys, "compact", "isfull", "--open", 'cylinders "0,10"', "--fuel", "1000")
    assert code == 2 and body["status"] == "Unknown"


def test_overt_and_nat(capsys):
    code, body, _ = run(capsys, "overt", "intersects", "--open", "bit 3 is 1")
    assert code == 0 and body["status"] == "Confirmed"
    assert run(capsys, "sep", "eq", "--space", "nat", "--x", "4", "--y", "4")[0] == 0
    assert run(capsys, "sep", "eq", "--space", "nat", "--x", "4", "--y", "5", "--fuel", "1e4")[0] == 2


def test_real_eval_at_point(capsys):
    code, body, _ = run(capsys, "real", "eval", "--expr", "x*x", "--at", "1/3", "--digits", "4")
    assert code == 0 and body["value"] == "0.1111 ± 1e-4"


def test_t2vm_run(capsys, tmp_path):
    src = tmp_path / "copy.asm"
    src.write_text("CONST r1 0\nCONST r2 1\nl: READINPUT r0 r1\nWRITE r0\nADD r1 r2\nJMP l\n")
    code, body, _ = run(capsys, "t2vm", "run", str(src), "--input", 'word "1011" then zeros', "--bits", "6")
    assert code == 0
    assert body["bits"] == "101100"


def test_determinism(capsys):
    argv = ("compact", "subcover", "--example", "case-split")
    assert run(capsys, *argv) == run(capsys, *argv)


@pytest.mark.parametrize("argv", [
    [],
    ["nope"],
    ["sep", "neq", "--space", "complex", "--x", "1", "--y", "2"],
    ["real", "max", "--set", "0,1", "--digits", "3", "--prec", "4"],
    ["real", "max", "--set", "0,zz", "--digits", "3"],
    ["compact", "isfull", "--open", "not a set"],
    ["t2vm", "run", "/no/such/file.asm"],
    ["sep", "eq", "--space", "nat", "--x", "4", "--y", "4", "--fuel", "-3"],
])
def test_usage_errors(capsys, argv):
    code, body, _ = run(capsys, *argv)
    assert code == 1 and body is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["sep", "real", "compact", "--fuel", "x", "--space", "max", "1e9", "--digits", ""]),
                max_size=5))
def test_malformed_arguments_never_crash(argv):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code in (0, 1, 2)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "reprspace", "sep", "eq", "--space", "nat", "--x", "2", "--y", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["status"] == "Confirmed"
