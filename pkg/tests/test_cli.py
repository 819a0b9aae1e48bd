import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from norlund.cli import main
from norlund.report import VerificationReport


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_bernoulli(capsys):
    code, out, _ = run(["compute", "bernoulli", "--n", "4", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [r[1] for r in rows[1:]] == ["1", "-1/2", "1/6", "0", "-1/30"]


def test_compute_bernoulli_json_keeps_rationals_exact(capsys):
    _, out, _ = run(["compute", "bernoulli", "--n", "2", "--format", "json"], capsys)
    assert json.loads(out) == [{"n": 0, "B_n": "1"}, {"n": 1, "B_n": "-1/2"}, {"n": 2, "B_n": "1/6"}]


def test_compute_norlund_polynomial_row(capsys):
    code, out, _ = run(["compute", "norlund", "--n", "2"], capsys)
    assert code == 0
    last = out.strip().splitlines()[-1]
    assert last.split(None, 1)[1] == "-1/12*alpha + 1/4*alpha^2"


def test_compute_norlund_at_integer_order(capsys):
    _, out, _ = run(["compute", "norlund", "--n", "4", "--ell", "1", "--format", "csv"], capsys)
    assert [r[1] for r in csv.reader(io.StringIO(out))][1:] == ["1", "-1/2", "1/6", "0", "-1/30"]


def test_compute_modified(capsys):
    code, out, _ = run(["compute", "modified", "--n", "1", "--ell", "1", "--format", "csv"], capsys)
    assert code == 0 and list(csv.reader(io.StringIO(out)))[1] == ["1", "3/4"]


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "bernoulli", "--n", "201"],
        ["compute", "modified", "--n", "3"],
        ["compute", "modified", "--n", "0", "--ell", "1"],
        ["density", "--ell", "4", "--method", "convolution_oracle"],
        ["density", "--ell", "1", "--method", "simpson"],
        ["density", "--ell", "1", "--x", "abc"],
        ["verify", "--id", "no-such"],
        ["verify"],
        ["verify", "--suite", "all", "--ell", "2"],
        ["verify", "--id", "pascal", "--tolerance", "pascal=1e-3"],
        ["verify", "--id", "psi-log-pair", "--tolerance", "psi-log-pair=-1"],
        ["verify", "--id", "log-moment", "--ell", "2", "--x", "0.5"],
        ["table", "density", "--points", "1"],
    ],
)
def test_bad_input_exits_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err.startswith("norlund: error:")


@pytest.mark.parametrize("argv", [["compute", "bernoulli", "--n", "3", "--bogus"], ["frobnicate"], ["compute", "euler", "--n", "2"]])
def test_argparse_rejections_exit_2(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_density_values(capsys):
    _, out, _ = run(["density", "--ell", "1", "--x", "0", "--format", "json"], capsys)
    assert json.loads(out)[0]["value"] == pytest.approx(math.pi / 2, rel=1e-15)
    _, out, _ = run(["density", "--ell", "2", "--x", "0"], capsys)
    assert "1.0471975" in out


def test_density_fourier_matches_closed_form(capsys):
    _, a, _ = run(["density", "--ell", "3", "--x", "0.5", "--method", "fourier", "--format", "json"], capsys)
    _, b, _ = run(["density", "--ell", "3", "--x", "0.5", "--format", "json"], capsys)
    fa, fb = json.loads(a)[0], json.loads(b)[0]
    assert abs(fa["value"] - fb["value"]) < 1e-9
    assert fa["error_estimate"] < 1e-9 and fb["error_estimate"] == ""


def test_density_multiple_x(capsys):
    _, out, _ = run(["density", "--ell", "2", "--x", "0,0.5", "--x", "1", "--format", "csv"], capsys)
    assert [r[0] for r in csv.reader(io.StringIO(out))] == ["x", "0", "0.5", "1"]


def test_verify_single_identity(capsys):
    code, out, _ = run(["verify", "--id", "log-moment", "--ell", "2", "--x", "3"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data) == 1
    r = VerificationReport.from_dict(data[0])
    assert r.passed and r.parameters == {"ell": 2, "x": [3.0]}


def test_verify_failure_exits_1(capsys):
    argv = ["verify", "--id", "chebyshev-integrals", "--ell", "1", "--param", "identity=second", "--param", "psi_argument=printed"]
    code, out, _ = run(argv, capsys)
    assert code == 1 and json.loads(out)[0]["passed"] is False


def test_verify_tolerance_override(capsys):
    code, out, _ = run(["verify", "--id", "psi-log-pair", "--tolerance", "psi-log-pair=1e-6"], capsys)
    assert code == 0 and json.loads(out)[0]["tolerance"] == 1e-6


def test_verify_csv_and_text(capsys):
    _, out, _ = run(["verify", "--id", "pascal", "--id", "norlund-table", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    # registry order, not command-line order
    assert [r["identity_id"] for r in rows] == ["norlund-table", "pascal"]
    assert all(r["passed"] == "true" for r in rows)
    _, out, _ = run(["verify", "--id", "pascal", "--format", "text"], capsys)
    assert out.startswith("PASS  pascal")


def test_verify_json_round_trip(capsys):
    _, out, _ = run(["verify", "--id", "log-moment-dde", "--ell", "1"], capsys)
    for d in json.loads(out):
        r = VerificationReport.from_dict(d)
        assert json.loads(r.to_json()) == d


def test_output_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(["table", "modified", "--n", "3", "--ell", "1", "--ell", "2", "-o", str(path)], capsys)
    assert code == 0 and out == ""
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == ["n", "B_n^(1)*", "B_n^(2)*"] and rows[1][1] == "3/4"


def test_table_density(capsys):
    _, out, _ = run(["table", "density", "--ell", "1", "--ell", "2", "--points", "3", "--x-max", "1"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "rho_1", "rho_2"] and len(rows) == 4
    assert float(rows[1][1]) == pytest.approx(math.pi / 2, rel=1e-15)


def test_module_entry_point_is_locale_independent():
    env = dict(os.environ, LC_ALL="de_DE.UTF-8", LANG="de_DE.UTF-8")
    out = subprocess.run(
        [sys.executable, "-m", "norlund", "density", "--ell", "2", "--x", "0.5", "--format", "csv"],
        env=env,
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    value = list(csv.reader(io.StringIO(out.stdout)))[1][1]
    assert "," not in value and float(value) == pytest.approx(0.42276946152415245915, rel=1e-12)
