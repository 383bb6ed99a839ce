import json

import pytest

from ginfty.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_SCALE, build_parser, fixture_path, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("cell, printed", [
    ("d2;1|2", "+1*(d2;12) -1*(d2;21)"),
    ("d2;12", "0"),
    ("d3;123", "-1*((d2 o1 d2);(12)o1(12)) +1*((d2 o2 d2);(12)o2(12))"),
])
def test_boundary_output(capsys, cell, printed):
    code, out, _ = run(capsys, "boundary", cell)
    assert code == EXIT_PASS
    assert out.strip() == printed


def test_boundary_check_d2(capsys):
    code, out, _ = run(capsys, "boundary", "d4;1|2|3|4", "--check-d2")
    assert code == EXIT_PASS
    assert out.strip().endswith("d^2 = 0: PASS")


@pytest.mark.parametrize("text", ["d2;1|", "d2;13", "nonsense", "d3;12"])
def test_boundary_parse_error(capsys, text):
    code, _, err = run(capsys, "boundary", text)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_boundary_arity_too_large(capsys):
    code, _, _ = run(capsys, "boundary", "d5;12345")
    assert code == EXIT_SCALE


def test_fixture_lookup():
    assert fixture_path("sl2").name == "sl2.json"
    assert fixture_path("sl2.json") == fixture_path("sl2")


def test_bounds_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "cells", "--max-arity", "0"])


def test_verify_cells(capsys, tmp_path):
    out_file = tmp_path / "cells.json"
    code, out, _ = run(capsys, "verify", "cells", "--max-arity", "3", "--out", str(out_file))
    assert code == EXIT_PASS
    data = json.loads(out_file.read_text())
    assert {d["identity"] for d in data} >= {"cells.d_squared arity=3", "cells.leibniz arity=3"}
    assert all(d["status"] == "PASS" and d["counterexample"] == [] for d in data)
    assert set(data[0]) == {"identity", "bound", "status", "counterexample"}


def test_verify_cells_unsupported(capsys):
    code, _, _ = run(capsys, "verify", "cells", "--max-arity", "5")
    assert code == EXIT_SCALE


def test_verify_galgebra_sl2(capsys):
    code, out, _ = run(capsys, "verify", "galgebra", "--lie", "sl2.json")
    assert code == EXIT_PASS
    assert "FAIL" not in out


def test_verify_hochschild_dual(capsys, tmp_path):
    out_file = tmp_path / "h.json"
    code, out, _ = run(capsys, "verify", "hochschild", "--algebra", "dual_numbers.json",
                       "--max-arity", "2", "--out", str(out_file))
    assert code == EXIT_PASS
    names = [d["identity"] for d in json.loads(out_file.read_text())]
    assert "braces.bracket_oracle" in names


def test_verify_hochschild_parallel_is_deterministic(capsys):
    argv = ["verify", "hochschild", "--algebra", "rationals", "--algebra", "truncated_cubic",
            "--max-arity", "1", "--max-inputs", "3"]
    c1, o1, _ = run(capsys, *argv)
    c2, o2, _ = run(capsys, *argv, "--jobs", "2")
    assert c1 == c2 == EXIT_PASS
    assert o1 == o2


def test_verify_large_bounds_warn(capsys):
    code, _, err = run(capsys, "verify", "hochschild", "--algebra", "rationals", "--max-inputs", "6")
    assert code == EXIT_PASS
    assert "warning" in err


def test_verify_nonassociative_input(capsys):
    code, _, err = run(capsys, "verify", "hochschild", "--algebra", "nonassociative.json")
    assert code == EXIT_INPUT
    assert "violating tuple" in err


def test_verify_missing_file(capsys):
    code, _, _ = run(capsys, "verify", "hochschild", "--algebra", "no_such_algebra.json")
    assert code == EXIT_INPUT


def test_verify_ginf_reports_failures(capsys, tmp_path):
    # the printed homotopy commutativity relation fails on the dual numbers already in degree 1
    out_file = tmp_path / "g.json"
    code, out, _ = run(capsys, "verify", "ginf", "--max-arity", "1", "--max-inputs", "3",
                       "--out", str(out_file))
    assert code == EXIT_FAIL
    data = {d["identity"]: d for d in json.loads(out_file.read_text())}
    assert data["hcomm"]["status"] == "FAIL"
    assert data["intertwining d2;1|2"]["status"] == "PASS"


def test_hh_dual_numbers(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", "dual_numbers.json")
    assert code == EXIT_PASS
    lines = out.splitlines()
    assert lines[:5] == [f"HH^{n}(dual_numbers) has dimension {k}" for n, k in enumerate([2, 1, 1, 1, 1])]
    assert all(l.startswith("PASS") for l in lines[5:])


def test_hh_rationals(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", "rationals", "--max-degree", "3")
    assert code == EXIT_PASS
    assert "HH^0(rationals) has dimension 1" in out
    assert "HH^3(rationals) has dimension 0" in out


def test_hh_scale(capsys):
    assert run(capsys, "hh", "--algebra", "rationals", "--max-degree", "7")[0] == EXIT_SCALE


def test_hh_nonassociative(capsys):
    code, _, err = run(capsys, "hh", "--algebra", "nonassociative.json")
    assert code == EXIT_INPUT
    assert "('a', 'a', 'a')" in err or "['a', 'a', 'a']" in err
