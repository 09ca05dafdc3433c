import io

import pytest

from optangent.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def fx(d, name):
    return str(d / name)


def test_check_axioms_dualnum(fixtures_dir):
    code, out = run("check-axioms", "--alg", fx(fixtures_dir, "dualnum.alg"))
    assert code == 0 and out.strip().endswith("ALL PASS (14 axioms)")


def test_dims_tass(fixtures_dir):
    code, out = run("dims", "--bound", "2", fx(fixtures_dir, "tass_qx.alg"))
    assert code == 0 and out == "1 2 4\n"


def test_kahler_report(fixtures_dir):
    code, out = run("kahler", fx(fixtures_dir, "qx_cubed.alg"))
    assert code == 0
    assert "generators 1: dx" in out and "relations 1: 3*x^2*dx" in out and "dim 2\n" in out


def test_failure_exit_and_stderr(fixtures_dir, capsys):
    code = main(["bundle-check", "--sabotage", fx(fixtures_dir, "qx_cubed.alg")], io.StringIO())
    assert code == 1
    assert capsys.readouterr().err.startswith("lift_universality: FAIL")


def test_dist_law_expectations(fixtures_dir):
    code, out = run("dist-law", "--expect", "surj-not-inj", fx(fixtures_dir, "qx.alg"))
    assert code == 0 and "ranks 1 2 3 4" in out
    code, _ = run("dist-law", fx(fixtures_dir, "qx.alg"))
    assert code == 1
    code, _ = run("dist-law", "--morphism", "Lie->Ass", "--kind", "shriek",
                  fx(fixtures_dir, "aff1.alg"))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["tangent-alg", "dualnum.alg"], ["tangent-geo", "dualnum.alg"],
    ["derivations", "qx_cubed.alg"], ["env-operad", "dualnum.alg"],
    ["env-algebra", "dualnum.alg"], ["vertical-tangent", "qy.alg", "qxy_xsq.alg"],
    ["slice-check", "qx.alg", "qxy.alg"], ["bundle-check", "--module", "zero", "qx_cubed.alg"],
    ["check-axioms", "--geo", "ass_xy_rel.alg"], ["check-axioms", "--alg", "aff1.alg"],
])
def test_commands_succeed(fixtures_dir, argv):
    args = [fx(fixtures_dir, a) if a.endswith(".alg") else a for a in argv]
    code, out = run(*args)
    assert code == 0, out


def test_output_is_deterministic(fixtures_dir):
    a = run("tangent-geo", "--dump-rules", fx(fixtures_dir, "ass_xy_rel.alg"))
    b = run("tangent-geo", "--dump-rules", fx(fixtures_dir, "ass_xy_rel.alg"))
    assert a == b


def test_out_writes_presentation(fixtures_dir, tmp_path):
    target = tmp_path / "t.alg"
    code, out = run("tangent-geo", "--out", str(target), fx(fixtures_dir, "dualnum.alg"))
    assert code == 0 and target.read_text() in out


def test_syntax_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("operad Com; gens x; rels (mu x);")
    assert main(["dims", str(bad)], io.StringIO()) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_file_argument(capsys):
    assert main(["dims"], io.StringIO()) == 2
