import io
import subprocess
import sys
from pathlib import Path

import pytest

from valgb.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, ProblemError, main, parse_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_val():
    assert run("val", "15/4", "--field", "Qp p=3") == (EXIT_OK, "1\n")
    assert run("val", "5/12", "--field", "Qp p=2") == (EXIT_OK, "-2\n")
    assert run("val", "(3+6*t^2)/t^3", "--field", "Qt") == (EXIT_OK, "-3\n")
    assert run("val", "0", "--field", "trivial") == (EXIT_OK, "inf\n")


def test_initial_example():
    code, out = run("initial", str(PROBLEMS / "initial.txt"))
    assert code == EXIT_OK
    assert "in_w: x^3*e1" in out and "in_wprec: 2*x^3*e1" in out


def test_nf_golden_and_header():
    code, out = run("nf", str(PROBLEMS / "division_max.txt"))
    assert code == EXIT_OK
    lines = out.splitlines()
    assert "convention: max" in lines[0]
    assert "r: 7*y^3*e2 - 15/2*x*y^2*e2" in lines


def test_nf_target_override():
    code, out = run("nf", str(PROBLEMS / "division_min.txt"), "--target", "[2*x^2, 3*y^2]")
    assert code == EXIT_OK and "r: 0" in out and "h1: 1" in out


def test_sform():
    code, out = run("sform", str(PROBLEMS / "division_max.txt"), "1", "2")
    assert out.splitlines()[-1] == "S(1,2): -5/2*x*y*e2 + 3/2*y^2*e2"
    assert run("sform", str(PROBLEMS / "division_max.txt"), "1", "5")[0] == EXIT_INPUT


def test_gb_and_minimal():
    code, out = run("gb", str(PROBLEMS / "remark_eps1.txt"), "--minimal")
    assert code == EXIT_OK
    assert "initial module: <x1*x2*e1, x2*x3*e2, x1*x3*e3>" in out


def test_gb_empty(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("field: Qp p=2\nvars: x, y\n")
    code, out = run("gb", str(p))
    assert code == EXIT_OK and "# 0 element(s)" in out


def test_hilbert():
    code, out = run("hilbert", str(PROBLEMS / "remark_eps1.txt"), "--max-degree", "6")
    assert "HF(6) = 39" in out
    assert "HP(d) = 6*d + 3" in out and "empirical stabilization" in out
    code, out = run("hilbert", str(PROBLEMS / "remark_eps1.txt"), "--max-degree", "2")
    assert "increase max degree" in out


def test_verify_exit_codes():
    assert run("verify", str(PROBLEMS / "remark_eps1.txt"))[0] == EXIT_OK
    code, out = run("verify", str(PROBLEMS / "zmod4_gap.txt"))
    assert code == EXIT_VERIFY and "counterexample" in out
    assert run("verify", str(PROBLEMS / "zmod4_gap.txt"), "--annihilators")[0] == EXIT_OK


def test_parse_errors_cite_position(tmp_path):
    with pytest.raises(ProblemError) as exc:
        parse_problem("field: Qp p=2\nvars: x\ngen: x^2 + 3*x**2\n")
    assert exc.value.line == 3 and exc.value.col == 16
    with pytest.raises(ProblemError) as exc:
        parse_problem("field: Qp p=2\nvars: x, y\ngen: x + y^2\n")
    assert "generator 1 is not homogeneous" in str(exc.value)
    with pytest.raises(ProblemError) as exc:
        parse_problem("field: Qp p=2\nvars: x, y\nweight: 1\n")
    assert exc.value.line == 3
    with pytest.raises(ProblemError):
        parse_problem("vars: x\n")
    p = tmp_path / "bad.txt"
    p.write_text("field: Qp p=6\n")
    assert run("gb", str(p))[0] == EXIT_INPUT


def test_argparse_errors_are_input_errors():
    with pytest.raises(SystemExit) as exc:
        main(["gb"])
    assert exc.value.code == EXIT_INPUT


@pytest.mark.parametrize("cmd", [["nf", "division_min.txt"], ["gb", "tadic.txt"], ["nf", "zmod8.txt"]])
def test_byte_identical_reruns(cmd):
    args = [sys.executable, "-m", "valgb.cli", cmd[0], str(PROBLEMS / cmd[1])]
    a = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    assert a == b and a


def test_printed_elements_reparse():
    prob = parse_problem((PROBLEMS / "tadic.txt").read_text())
    code, out = run("gb", str(PROBLEMS / "tadic.txt"))
    for line in out.splitlines():
        if line.startswith("g"):
            text = line.split(": ", 1)[1]
            assert prob.ambient.parse(text).is_homogeneous()
            g = prob.ambient.parse(text)
            from valgb.textio import format_element

            assert format_element(g, prob.order) == text
