"""End-to-end CLI behavior: outputs, exit codes, structured reports."""

import json

import pytest

from fibluc.cli import main
from oracles import int_seq


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- eval ---------------------------------------------------------------------


def test_eval_symbolic(capsys):
    code, out, _ = run_cli(capsys, "eval", "F", "6")
    assert code == 0
    assert out.strip() == "x^5 + 4*x^3*y + 3*x*y^2"


def test_eval_lucas_seed(capsys):
    code, out, _ = run_cli(capsys, "eval", "L", "1")
    assert code == 0
    assert out.strip() == "x"


def test_eval_at_point(capsys):
    code, out, _ = run_cli(capsys, "eval", "F", "10", "--at", "1,1")
    assert code == 0
    assert out.strip() == "55"


def test_eval_identity_substitution_is_byte_identical(capsys):
    code_a, out_a, _ = run_cli(capsys, "eval", "F", "9")
    code_b, out_b, _ = run_cli(capsys, "eval", "F", "9", "--xsub", "x", "--ysub", "y")
    assert code_a == code_b == 0
    assert out_a == out_b


def test_eval_composed_substitution(capsys):
    # x * F_3(x^2+2y, -y^2) = F_6
    code, out, _ = run_cli(capsys, "eval", "F", "3", "--xsub", "x^2+2*y", "--ysub=-y^2")
    assert code == 0
    code6, out6, _ = run_cli(capsys, "eval", "F", "6")
    # multiply the composed value by x by comparing against F_6 textually
    assert out6.strip() == "x^5 + 4*x^3*y + 3*x*y^2"
    assert out.strip() == "x^4 + 4*x^2*y + 3*y^2"


def test_eval_rejects_free_meta_variables(capsys):
    code, _, err = run_cli(capsys, "eval", "F", "3", "--xsub", "L[k]")
    assert code == 2
    assert "free meta-variable" in err


def test_eval_rejects_at_with_substitution(capsys):
    code, _, err = run_cli(capsys, "eval", "F", "3", "--xsub", "x", "--at", "1,1")
    assert code == 2


def test_eval_delta_substitution(capsys):
    code, out, _ = run_cli(capsys, "eval", "L", "1", "--xsub", "D")
    assert code == 0
    assert out.strip() == "(0) + (1)*D"


# -- catalog -------------------------------------------------------------------


def test_catalog_small_grid_passes(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--n-max", "3", "--k-max", "2")
    assert code == 0
    assert "all" in out and "pass" in out


def test_catalog_single_case(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--ids", "EQ15", "--n-max", "1")
    assert code == 0


def test_catalog_unknown_id(capsys):
    code, _, err = run_cli(capsys, "catalog", "--ids", "EQ99")
    assert code == 2
    assert "EQ99" in err


def test_catalog_json_schema_and_verdicts_match_text(capsys):
    code_j, out_j, _ = run_cli(capsys, "catalog", "--ids", "EQ04,EQ16", "--n-max", "3", "--k-max", "2", "--json")
    records = json.loads(out_j)
    assert code_j == 0
    # one record per grid cell: EQ04 has n in 1..3, EQ16 has n in 0..3, k in 1..2
    assert len(records) == 3 + 4 * 2
    for record in records:
        assert set(record) == {"id", "n", "k", "status", "elapsed_ms"}
        assert record["status"] == "pass"
    code_t, out_t, _ = run_cli(capsys, "catalog", "--ids", "EQ04,EQ16", "--n-max", "3", "--k-max", "2")
    assert code_t == code_j
    assert out_t.count("pass") >= len(records)


# -- verify --------------------------------------------------------------------


def test_verify_linear_identity(capsys):
    code, out, _ = run_cli(capsys, "verify", "y*F[n-1]+F[n+1]=L[n]", "--range", "n=1..10")
    assert code == 0
    assert "all 10 cells pass" in out


def test_verify_counterexample(capsys):
    code, out, _ = run_cli(capsys, "verify", "F[n]=L[n]", "--range", "n=0..2")
    assert code == 1
    assert "counterexample" in out
    assert "'0' vs '2'" in out


def test_verify_doubling(capsys):
    code, out, _ = run_cli(capsys, "verify", "F[2*n] = F[n]*L[n]", "--range", "n=0..12")
    assert code == 0


def test_verify_parse_error_with_position(capsys):
    code, _, err = run_cli(capsys, "verify", "F[n] = ", "--range", "n=0..2")
    assert code == 2
    assert "parse error at 1:" in err


def test_verify_combined_range_flag(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "F[n*k]*1 = F[n*k]", "--range", "n=0..2,k=1..2"
    )
    assert code == 0
    assert "all 6 cells pass" in out


def test_verify_bad_range(capsys):
    code, _, err = run_cli(capsys, "verify", "F[n]=F[n]", "--range", "n=0-3")
    assert code == 2


def test_verify_json_failure_records_carry_sides(capsys):
    code, out, _ = run_cli(capsys, "verify", "F[n]=L[n]", "--range", "n=0..1", "--json")
    assert code == 1
    records = json.loads(out)
    assert len(records) == 2
    assert records[0]["status"] == "fail"
    assert records[0]["lhs"] == "0" and records[0]["rhs"] == "2"


def test_verify_corpus_subset(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--corpus", "--ids", "EQ20,EQ27", "--n-max", "4", "--k-max", "3"
    )
    assert code == 0


def test_verify_corpus_from_explicit_path(tmp_path, capsys):
    corpus = tmp_path / "mini.txt"
    corpus.write_text("# id: EQ20\ny*F[n-1] + F[n+1] = L[n]\n")
    code, out, _ = run_cli(capsys, "verify", "--corpus", str(corpus), "--n-max", "5")
    assert code == 0
    assert "all 5 cells pass" in out


def test_verify_rejects_identity_plus_corpus(capsys):
    code, _, err = run_cli(capsys, "verify", "F[n]=F[n]", "--corpus")
    assert code == 2


def test_verify_missing_corpus_file(capsys):
    code, _, err = run_cli(capsys, "verify", "--corpus", "/nonexistent/corpus.txt")
    assert code == 2
    assert "error:" in err


def test_verify_corpus_line_without_id(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("F[n] = F[n]\n")
    code, _, err = run_cli(capsys, "verify", "--corpus", str(bad))
    assert code == 2


def test_eval_negative_index(capsys):
    code, _, err = run_cli(capsys, "eval", "F", "-1")
    assert code == 2
    assert "nonnegative" in err


# -- sequence ------------------------------------------------------------------


def test_sequence_fibonacci(capsys):
    code, out, _ = run_cli(capsys, "sequence", "F", "--x", "1", "--y", "1", "--count", "8")
    assert code == 0
    assert [int(v) for v in out.split()] == int_seq(0, 1, 1, 1, 8)
    assert out.split() == ["0", "1", "1", "2", "3", "5", "8", "13"]


def test_sequence_lucas(capsys):
    code, out, _ = run_cli(capsys, "sequence", "L", "--x", "1", "--y", "1", "--count", "6")
    assert code == 0
    assert out.split() == ["2", "1", "3", "4", "7", "11"]


def test_sequence_pell(capsys):
    code, out, _ = run_cli(capsys, "sequence", "F", "--x", "2", "--y", "1", "--count", "6")
    assert code == 0
    assert out.split() == ["0", "1", "2", "5", "12", "29"]


def test_sequence_rational_point(capsys):
    code, out, _ = run_cli(capsys, "sequence", "F", "--x", "1/2", "--y", "1", "--count", "4")
    assert code == 0
    assert out.split() == ["0", "1", "1/2", "5/4"]


def test_sequence_rejects_bad_count(capsys):
    code, _, err = run_cli(capsys, "sequence", "F", "--x", "1", "--y", "1", "--count", "0")
    assert code == 2


def test_sequence_rejects_bad_rational(capsys):
    code, _, err = run_cli(capsys, "sequence", "F", "--x", "one", "--y", "1", "--count", "3")
    assert code == 2


# -- usage errors ------------------------------------------------------------------


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_module_runner_smoke():
    import subprocess
    import sys

    done = subprocess.run(
        [sys.executable, "-m", "fibluc", "eval", "F", "6"],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0
    assert done.stdout.strip() == "x^5 + 4*x^3*y + 3*x*y^2"
