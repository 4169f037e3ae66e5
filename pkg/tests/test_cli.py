import json

import pytest

from jetforms.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_effective(capsys):
    code, out, _ = run(capsys, "effective", "d[1,2;1,2] - beta", "--format", "latex")
    assert code == 0
    assert out.strip().startswith(r"-d^{1234} + \frac{1}{3}")


def test_effective_with_residual(capsys):
    code, out, _ = run(capsys, "effective", "d[1,2;1,2]", "--residual")
    assert code == 0 and "residual: -1/3*dq1^dp1" in out


def test_euler_of_lagrangian(capsys):
    code, out, _ = run(capsys, "--n", "2", "--param", "c", "euler", "1/2*(-p1^2 + c*p2^2)")
    assert code == 0 and out.strip() == "-c*dq1^dp2 - dq2^dp1"


def test_extract(capsys):
    code, out, _ = run(capsys, "extract", "-d[2,3,4;1] + d[1,2;1,2]")
    assert out.strip() == "phi_13*phi_24 - phi_14*phi_23 + phi_11"


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "phi_11*phi_22 - phi_12^2 + phi_13 + phi_24")
    assert code == 0 and out.strip() == "dq1^dq2^dq3^dp2 - dq1^dq2^dq4^dp1 + dq3^dq4^dp1^dp2"


def test_check_variational_json(capsys):
    code, out, _ = run(capsys, "check-variational", "--n", "2", "--param", "c", "-c*dq1^dp2 - dq2^dp1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "ReconstructionFound" and doc["L"] == "1/2*p2^2*c - 1/2*p1^2"


def test_negative_verdict_exits_zero(capsys):
    code, out, _ = run(capsys, "check-variational", "d[1,2;1,2] - beta")
    assert code == 0 and "NotVariationalFirstOrder" in out


def test_check_multisymplectic(capsys):
    code, out, _ = run(capsys, "check-multisymplectic", "d[1,2;1,2] - beta", "--normalize")
    assert code == 0 and "multisymplectic (criteria): True" in out
    code, _, err = run(capsys, "check-multisymplectic", "d[1,2;1,2]")
    assert code == 1 and "not effective" in err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "plebanski1" in out
    code, out, _ = run(capsys, "catalog", "show", "grant", "--validate", "--format", "json")
    doc = json.loads(out)
    assert doc["variational"] == "NotVariationalFirstOrder" and doc["multisymplectic_criteria"] is True
    code, _, err = run(capsys, "catalog", "show", "nope")
    assert code == 1


def test_el(capsys):
    code, out, _ = run(
        capsys, "el", "--fields", "phi,psi",
        "--lagrangian", "psi*phi_1*phi_22 + 1/2*phi_1*phi_3 - 1/2*psi^2*phi_22 + 1/2*phi_2*phi_4",
    )
    assert code == 0 and "psi: phi_1*phi_22 - phi_22*psi" in out


def test_helein(capsys):
    code, out, _ = run(capsys, "helein")
    assert code == 0 and "H on the n-curve = 0" in out


def test_file_input(capsys, tmp_path):
    code, out, _ = run(capsys, "effective", "d[1,2;1,2] - beta", "--format", "json")
    path = tmp_path / "w.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "check-variational", f"@{path}")
    assert code == 0 and "dq1^dq2^dp1^dp2" in out2
    (tmp_path / "w.txt").write_text("d[1,2;1,2] - beta\n")
    code, out3, _ = run(capsys, "effective", f"@{tmp_path / 'w.txt'}", "--format", "json")
    assert out3 == out


@pytest.mark.parametrize(
    "argv",
    [
        ["effective", "beta +"],
        ["bogus"],
        ["effective", "zz*beta"],
        ["--n", "9", "effective", "beta"],
        ["euler", "dq1"],
        ["effective", "@/nonexistent/file"],
    ],
)
def test_user_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err
