import json
from fractions import Fraction

import pytest

import radnorm
from radnorm.cli import (
    EXIT_CAPACITY,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    TableRequest,
    main,
)
from radnorm.exactnum import parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# table


def test_table_gamma_plain(capsys):
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "1..3", "--k", "2", "--s", "3",
        "--methods", "closed,recursive,oracle",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split() == ["N", "k", "s", "closed", "recursive", "oracle"]
    assert lines[1].split() == ["1", "2", "3", "36", "36", "36"]
    assert lines[2].split() == ["2", "2", "3", "45", "45", "45"]
    assert lines[3].split() == ["3", "2", "3", "54", "54", "54"]


def test_table_ell_csv_header_and_order(capsys):
    code, out, _ = run(
        capsys, "table", "--norm", "ell", "--N", "2..4", "--k", "2",
        "--methods", "recursive,closed", "--format", "csv",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    # header mandatory; method columns in the fixed order closed, recursive
    assert lines[0] == "N,k,s,closed,recursive"
    assert lines[1:] == ["2,2,,2,2", "3,2,,3,3", "4,2,,4,4"]


def test_table_gamma_zero_order(capsys):
    code, out, _ = run(capsys, "table", "--norm", "gamma", "--N", "2", "--k", "0", "--s", "5")
    assert code == EXIT_OK
    assert out.strip().splitlines()[1].split() == ["2", "0", "5", "1"]


def test_table_special_cells_only_where_defined(capsys):
    # values starting with "-" need the --s=... form, as usual with argparse
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "4", "--k", "2", "--s=-2,1",
        "--methods", "closed,special", "--format", "csv",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[1] == "4,2,-2,48,48"  # s = -(n-2): special defined
    assert lines[2] == "4,2,1,3,"  # otherwise empty


def test_table_json_round_trips(capsys):
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "1..2", "--k", "0..3",
        "--s", "1/2,-3", "--methods", "closed,recursive", "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["version"] == radnorm.__version__
    assert payload["request"]["norm"] == "gamma"
    for row in payload["rows"]:
        s = parse_rational(row["s"])
        value = parse_rational(row["closed"])
        assert value == radnorm.gamma_closed(row["N"], s, row["k"])
        assert parse_rational(row["recursive"]) == value


def test_table_oracle_skipped_above_cap_unless_forced(capsys):
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "1", "--k", "6", "--s", "2",
        "--methods", "closed,oracle", "--format", "csv",
    )
    assert code == EXIT_OK
    assert out.strip().splitlines()[1] == "1,6,2,0,"
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "1", "--k", "6", "--s", "2",
        "--methods", "closed,oracle", "--format", "csv", "--force-oracle",
    )
    assert code == EXIT_OK
    assert out.strip().splitlines()[1] == "1,6,2,0,0"


def test_table_decimal_column(capsys):
    code, out, _ = run(
        capsys, "table", "--norm", "gamma", "--N", "1", "--k", "2", "--s", "1/2",
        "--format", "csv", "--decimal",
    )
    assert code == EXIT_OK
    assert out.strip().splitlines()[1] == "1,2,1/2,1/16,0.0625"


def test_table_request_validation():
    with pytest.raises(ValueError):
        TableRequest("gamma", (2, 1), (0, 2), [Fraction(1)])
    with pytest.raises(ValueError):
        TableRequest("gamma", (1, 2), (0, 2), None)
    with pytest.raises(ValueError):
        TableRequest("ell", (1, 2), (0, 2), None)
    with pytest.raises(ValueError):
        TableRequest("ell", (1, 2), (1, 2), [Fraction(1)])
    with pytest.raises(ValueError):
        TableRequest("gamma", (1, 2), (1, 2), [Fraction(1)], methods=["magic"])
    request = TableRequest("gamma", (1, 2), (1, 2), [Fraction(1)], methods=["oracle", "closed"])
    assert request.methods == ["closed", "oracle"]


# ---------------------------------------------------------------------------
# verify


def test_verify_log_example(capsys):
    code, out, _ = run(capsys, "verify", "--N", "3", "--kind", "logarithm", "--k", "3")
    assert code == EXIT_OK
    assert "closed: 28" in out
    assert "recursive: 28" in out
    assert "verdict: exact-match" in out


def test_verify_with_explicit_points(capsys):
    code, out, _ = run(
        capsys, "verify", "--N", "2", "--kind", "power", "--s", "0", "--k", "1",
        "--points", "1,0;1,2",
    )
    assert code == EXIT_OK
    assert "closed: 0" in out
    assert "verdict: exact-match" in out


def test_verify_json_round_trips(capsys):
    code, out, _ = run(
        capsys, "verify", "--N", "1", "--kind", "power", "--s", "1/2", "--k", "2",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["report"]["verdict"] == "exact-match"
    assert parse_rational(payload["report"]["methods"]["closed"]) == Fraction(1, 16)
    for entry in payload["report"]["points"]:
        assert parse_rational(entry["value"]) == Fraction(1, 16)
        for c in entry["point"]:
            parse_rational(c)


def test_verify_csv(capsys):
    code, out, _ = run(
        capsys, "verify", "--N", "2", "--kind", "logarithm", "--k", "2", "--format", "csv",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "item,value"
    assert "closed,2" in lines
    assert lines[-1] == "verdict,exact-match"


# ---------------------------------------------------------------------------
# identities


def test_identities_defaults_pass(capsys):
    code, out, _ = run(capsys, "identities", "--max-m", "6", "--trials", "5")
    assert code == EXIT_OK
    assert "result: PASS" in out
    assert "tilde-nonconstancy" in out
    assert "(2, 1)" in out


def test_identities_skips_split_in_dimension_one(capsys):
    code, out, _ = run(capsys, "identities", "--max-N", "1", "--max-m", "3", "--trials", "3")
    assert code == EXIT_OK
    assert "dimension-split      SKIP" in out


def test_identities_json(capsys):
    code, out, _ = run(
        capsys, "identities", "--max-m", "3", "--max-k", "2", "--trials", "3",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["report"]["result"] == "PASS"
    names = {s["name"] for s in payload["report"]["sections"]}
    assert "half-identity" in names and "tilde-nonconstancy" in names


# ---------------------------------------------------------------------------
# exit statuses, determinism, output file


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "table", "--norm", "gamma", "--N", "1..2")[0] == EXIT_USAGE
    assert run(capsys, "table", "--norm", "ell", "--N", "2", "--k", "0..2")[0] == EXIT_USAGE
    assert run(capsys, "table", "--norm", "ell", "--N", "2", "--k", "1", "--s", "3")[0] == EXIT_USAGE
    assert run(capsys, "table", "--norm", "gamma", "--N", "3..1", "--k", "1", "--s", "3")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--N", "2", "--kind", "power", "--k", "1")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--N", "2", "--kind", "logarithm", "--k", "0")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--N", "2", "--kind", "logarithm", "--k", "1",
               "--points", "0,0;1,1")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--N", "2", "--kind", "logarithm", "--k", "1",
               "--points", "1/0,1")[0] == EXIT_USAGE
    assert run(capsys, "nonsense")[0] == EXIT_USAGE


def test_capacity_exit_three(capsys):
    code, _, err = run(capsys, "verify", "--N", "7", "--kind", "logarithm", "--k", "2")
    assert code == EXIT_CAPACITY
    assert "capacity" in err


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_output_is_deterministic(capsys):
    argv = ["verify", "--N", "2", "--kind", "logarithm", "--k", "3", "--seed", "42"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    argv = ["table", "--norm", "ell", "--N", "1..3", "--k", "1..4",
            "--methods", "closed,recursive,oracle", "--format", "json", "--seed", "7"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(
        capsys, "table", "--norm", "ell", "--N", "2", "--k", "2", "--format", "csv",
        "--out", str(target),
    )
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text() == "N,k,s,closed\n2,2,,2\n"
