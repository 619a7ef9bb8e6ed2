import json

import pytest

from oppmix import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_table(capsys):
    code, out, _ = run(capsys, "spectrum", "--e1", "2", "--e2", "2", "--q", "2")
    assert code == 0
    assert "4, 2, 1" in out
    assert "+-16, +-4, +-2" in out
    assert "cross-check: ok" in out


def test_spectrum_swaps_arguments(capsys):
    code, out, _ = run(capsys, "spectrum", "--e1", "1", "--e2", "2", "--q", "2")
    assert code == 0
    assert "e1=2 e2=1" in out


def test_spectrum_half_exponent(capsys):
    code, out, _ = run(
        capsys, "spectrum", "--e1", "2", "--e2", "1", "--q", "4", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["exponents"] == ["2", "1/2"]
    assert doc["eigenvalues"] == ["16", "2"]


def test_bound_json_roundtrip(capsys):
    code, out, _ = run(
        capsys,
        "bound",
        "--family",
        "unitary",
        "--e1",
        "1",
        "--e2",
        "1",
        "--q",
        "2",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["tight"] is True
    assert doc["lower_bound"]["a"] == {"num": "1", "den": "2", "approx": 0.5}
    # canonical JSON: parse -> re-serialize is byte-identical
    assert cli.dumps_canonical(doc) == out.strip()


def test_bound_orthogonal_requires_signs(capsys):
    code, _, err = run(
        capsys, "bound", "--family", "orthogonal", "--e1", "2", "--e2", "2", "--q", "2"
    )
    assert code == 2
    assert "required" in err


def test_bound_exception_note(capsys):
    code, out, err = run(
        capsys,
        "bound",
        "--family",
        "orthogonal",
        "--eps",
        "+",
        "--sigma1",
        "-",
        "--sigma2",
        "-",
        "--e1",
        "2",
        "--e2",
        "2",
        "--q",
        "2",
    )
    assert code == 1  # the bound itself fails; oracle dispatch advised
    assert "dispatch" in err
    assert "FAIL" in out


def test_bound_csv(capsys):
    code, out, _ = run(
        capsys,
        "bound",
        "--family",
        "symplectic",
        "--e1",
        "2",
        "--e2",
        "2",
        "--q",
        "2",
        "--format",
        "csv",
    )
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == ",".join(cli.CSV_COLUMNS)
    fields = row.split(",")
    assert fields[0] == "symplectic"
    assert fields[9] == "13/35"
    assert fields[11] == "True"


def test_count_hermitian_tight(capsys):
    code, out, _ = run(
        capsys,
        "count",
        "--family",
        "unitary",
        "--e1",
        "1",
        "--e2",
        "1",
        "--q",
        "2",
        "--full-pairs",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["proportion"] == {"num": "1", "den": "2", "approx": 0.5}
    assert doc["method"] == "full-pairs"
    assert cli.dumps_canonical(doc) == out.strip()


def test_count_orthogonal(capsys):
    code, out, _ = run(
        capsys,
        "count",
        "--family",
        "orthogonal",
        "--eps",
        "+",
        "--sigma1",
        "-",
        "--sigma2",
        "-",
        "--e1",
        "2",
        "--e2",
        "2",
        "--q",
        "2",
    )
    assert code == 0
    assert "|Y1| = 2" in out
    assert "PASS" in out


def test_count_budget_exit_code(capsys):
    code, _, err = run(
        capsys,
        "count",
        "--family",
        "symplectic",
        "--e1",
        "4",
        "--e2",
        "4",
        "--q",
        "3",
        "--budget",
        "1000",
    )
    assert code == 3
    assert "budget" in err.lower()


def test_verify_symplectic(capsys):
    code, out, _ = run(capsys, "verify", "--family", "symplectic")
    assert code == 0
    assert "symplectic: PASS" in out


def test_verify_unitary_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "unitary", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["unitary"]["passed"] is True
    assert doc["unitary"]["failures"] == []


def test_verify_orthogonal_skip_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--family", "orthogonal", "--skip-oracle")
    assert code == 0
    assert "orthogonal: PASS" in out
    assert "0 oracle dispatches" in out


def test_mixing_check(capsys):
    code, out, _ = run(
        capsys, "mixing-check", "--e1", "2", "--e2", "1", "--q", "2", "--trials", "20"
    )
    assert code == 0
    assert "PASS" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "--family", "hermitian", "--e1", "1", "--e2", "1", "--q", "2"])
    assert exc.value.code == 2


def test_invalid_parameters_exit_code(capsys):
    code, _, err = run(
        capsys, "count", "--family", "symplectic", "--e1", "3", "--e2", "3", "--q", "2"
    )
    assert code == 2
    assert "even" in err
    code, _, err = run(capsys, "spectrum", "--e1", "1", "--e2", "0", "--q", "2")
    assert code == 2


def test_frac_str():
    from fractions import Fraction

    assert cli.frac_str(Fraction(3, 7)) == "3/7"
    assert cli.frac_str(Fraction(4)) == "4"
    assert cli.frac_str(None) == ""
