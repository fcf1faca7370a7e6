import json

import pytest

from modinv import caps
from modinv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def s3_char2(tmp_path, capsys):
    path = tmp_path / "s3_char2.repspec"
    code, _, _ = run(capsys, "construct", "regular", "--group", "S3", "--char", "2", "--out", str(path))
    assert code == 0
    return path


def test_sigma_certificate(capsys, s3_char2):
    code, out, _ = run(capsys, "sigma", "--spec", str(s3_char2))
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 3 and doc["kind"] == "sigma"
    code2, out2, _ = run(capsys, "sigma", "--spec", str(s3_char2))
    assert out2 == out


def test_delta_certificate(capsys, s3_char2):
    code, out, _ = run(capsys, "delta", "--spec", str(s3_char2))
    assert code == 0 and json.loads(out)["value"] == 2


def test_construct_zqzd(capsys):
    code, out, _ = run(capsys, "construct", "zq-rtimes-zd", "3", "2", "1", "--char", "2")
    assert code == 0
    assert "k = 2" in out and "matrix = [[z, 0], [0, z+1]]" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "p-times-a", "--p-group", "Z2", "--a-orders", "3", "--char", "2"],
        ["construct", "normalizer-twist", "--p-group", "Z3", "--r", "2", "--char", "3"],
        ["construct", "normalizer-twist", "--p-group", "V4", "--auto", "(1,2,3)", "--r", "3", "--char", "2"],
        ["construct", "induced", "--group", "S3", "--subgroup", "(1,2,3)", "--char", "2"],
        ["construct", "regular", "--group", "(1,2,3,4);(1,2)", "--char", "3"],
    ],
)
def test_constructors_emit_parseable_specs(capsys, argv):
    from modinv.repspec import parse_repspec

    code, out, _ = run(capsys, *argv)
    assert code == 0
    parse_repspec(out)


def test_invariants_lines(capsys, s3_char2):
    code, out, _ = run(capsys, "invariants", "--spec", str(s3_char2), "--degree", "2", "--up-to")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1: x1+x2+x3+x4+x5+x6"
    assert sum(line.startswith("2: ") for line in lines) == 5


def test_field(capsys):
    code, out, _ = run(capsys, "field", "2", "--roots", "5")
    assert code == 0 and json.loads(out) == {"p": 2, "k": 4, "modulus": json.loads(out)["modulus"], "size": 16}


def test_groebner_origin_check(capsys, tmp_path):
    path = tmp_path / "a4.txt"
    path.write_text("# A4 triple\nx1^2+x2^2+x3^2\nx1*x2*x3\nx1^4+x2^4+x3^4\n")
    code, out, _ = run(capsys, "groebner", "origin-check", "--input", str(path), "--nvars", "3", "--char", "3")
    doc = json.loads(out)
    assert code == 0 and doc["cuts_out_origin"] is True
    assert [v["in_radical"] for v in doc["variables"]] == [True, True, True]
    code, out, _ = run(capsys, "groebner", "origin-check", "x1*x2", "--nvars", "2", "--char", "3")
    assert json.loads(out)["cuts_out_origin"] is False


def test_cap_errors_name_the_cap(capsys, s3_char2):
    code, _, err = run(capsys, "--cap-group", "4", "sigma", "--spec", str(s3_char2))
    assert code == 1 and "group-order" in err
    code, _, err = run(capsys, "--cap-monomials", "3", "invariants", "--spec", str(s3_char2), "--degree", "2")
    assert code == 1 and "monomials" in err
    code, _, err = run(capsys, "--cap-dim", "4", "construct", "regular", "--group", "S3", "--char", "2")
    assert code == 1 and "dim" in err
    assert caps.GROUP_ORDER == 512 and caps.MONOMIALS == 10**6


def test_error_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.repspec"
    bad.write_text("[field]\np = 4\n[group]\nmatrix = [[1]]\n")
    code, _, err = run(capsys, "sigma", "--spec", str(bad))
    assert code == 1 and "line 2" in err
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1
    code, _, _ = run(capsys, "sigma", "--spec", str(tmp_path / "missing.repspec"))
    assert code == 1


def test_bounds(capsys, tmp_path):
    reg = tmp_path / "s3_char3.repspec"
    twist = tmp_path / "twist.repspec"
    assert main(["construct", "regular", "--group", "S3", "--char", "3", "--out", str(reg)]) == 0
    assert main(["construct", "normalizer-twist", "--p-group", "Z3", "--r", "2", "--char", "3", "--out", str(twist)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "bounds", "--spec", str(reg), "--twist", str(twist))
    assert code == 0
    reports = json.loads(out)["reports"]
    assert all(c["holds"] for r in reports for c in r["checks"])
    assert any(c["relation"] == ">=" for r in reports for c in r["checks"])


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "paper", "--only", "2", "11")
    assert code == 0
    assert out.splitlines()[0].startswith("[PASS]  2.")
    assert "s" in err and "(0." not in out
