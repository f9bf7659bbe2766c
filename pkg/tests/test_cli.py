import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from conftest import REF_GGG_BELOW
from qcq import capnet, cli, designer


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def net_file(tmp_path):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(capnet.ggg_network(*REF_GGG_BELOW).to_dict()))
    return path


@pytest.fixture
def unit_a_file(tmp_path):
    path = tmp_path / "cqq0.json"
    path.write_text(json.dumps(capnet.ggg_network(78.6, 56.6, 6.0, 0.0).to_dict()))
    return path


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(designer.reference_ggg_spec("on_below_off").to_dict()))
    return path


# -- formatting ---------------------------------------------------------------


@pytest.mark.parametrize("value, text", [(1.0, "1.00000"), (12.3291, "12.3291"), (-0.000123456789, "-0.000123457"), (math.nan, "nan")])
def test_fmt(value, text):
    assert cli.fmt(value) == text


def test_sweep_csv_layout():
    sweep = designer.coupling_sweep(1.24, 640.0, 6.61, 6.0, 8.0, 5)
    text = cli.sweep_csv(sweep)
    lines = text.split("\n")
    assert lines[0] == cli.CSV_HEADER
    assert lines[-1] == ""
    assert "\r" not in text
    rows = list(csv.reader(io.StringIO(text)))[1:]
    assert len(rows) == 5
    assert rows[0][1] == "nan"
    assert float(rows[-1][1]) == pytest.approx(sweep.g[-1] * 1e3, rel=1e-5)


def test_parse_sweep_errors():
    assert cli._parse_sweep("7:15:161") == (7.0, 15.0, 161)
    for bad in ("7:15", "a:b:c", "15:7:10", "7:15:1"):
        with pytest.raises(cli.UsageError):
            cli._parse_sweep(bad)


# -- analyze ------------------------------------------------------------------


def test_analyze_writes_outputs(net_file, tmp_path):
    code, out, _ = run("analyze", net_file, "--wq", 6.61, "-o", tmp_path / "out")
    assert code == cli.EXIT_OK
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["schema_version"] == designer.SCHEMA_VERSION
    assert report["A"] == pytest.approx(capnet.extract_energies(capnet.ggg_network(*REF_GGG_BELOW)).A, rel=1e-15)
    assert report["omega_off_GHz"] == pytest.approx(15.02, abs=0.01)
    raw = (tmp_path / "out" / "sweep.csv").read_bytes()
    assert raw.startswith(cli.CSV_HEADER.encode() + b"\n")
    assert b"\r\n" not in raw
    assert len(raw.splitlines()) == 162
    assert "omega_off (GHz)" in out


def test_analyze_is_bit_identical(net_file, tmp_path):
    for d in ("a", "b"):
        assert run("analyze", net_file, "--wq", 6.61, "-o", tmp_path / d)[0] == 0
    for name in ("report.json", "sweep.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_analyze_flags_rows_below_qubit(net_file, tmp_path):
    code, out, _ = run("analyze", net_file, "--wq", 6.61, "--sweep", "6:7:11", "-o", tmp_path)
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert len(report["sweep"]["flagged_omega_c_GHz"]) == 7
    assert "written as nan" in out


def test_analyze_unit_a_has_no_crossing(unit_a_file, tmp_path):
    assert run("analyze", unit_a_file, "--wq", 6.61, "-o", tmp_path)[0] == 0
    assert json.loads((tmp_path / "report.json").read_text())["omega_off_GHz"] is None


# -- check-zero / bound -------------------------------------------------------


def test_check_zero_feasible(net_file):
    code, out, _ = run("check-zero", net_file, "--beta-s", 10)
    assert code == cli.EXIT_OK
    assert "feasible" in out and "infeasible" not in out


def test_check_zero_infeasible(unit_a_file):
    code, out, _ = run("check-zero", unit_a_file, "--beta-s", 10)
    assert code == cli.EXIT_INFEASIBLE
    assert "infeasible" in out


def test_check_zero_mirror_symmetric_fgf(tmp_path):
    c = dict.fromkeys(capnet.FGF_CAPS, 5.0)
    c.update(C01=70, C02=70, C03=70, C04=70, C0c=60)
    path = tmp_path / "fgf.json"
    path.write_text(json.dumps(capnet.fgf_network(c).to_dict()))
    assert run("check-zero", path, "--beta-s", 10)[0] == cli.EXIT_INFEASIBLE
    code, _, err = run("analyze", path, "--wq", 6, "-o", tmp_path / "o")
    assert code == cli.EXIT_NUMERICAL
    assert "numerical failure" in err


def test_bound_by_ceiling():
    code, out, _ = run("bound", "--omega-l", 15, "--beta-s", 10)
    assert code == 0
    assert "12.3291 MHz" in out


def test_bound_by_qubit_frequency():
    code, out, _ = run("bound", "--omega-q", 4.811, 5.099, 6.924, "--beta-s", 8)
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line.split()[0] in ("4.81100", "5.09900", "6.92400")]
    reference = (14.06, 14.90, 20.23)
    assert [float(r[1]) for r in rows] == pytest.approx(reference, abs=0.02)
    assert all(float(r[2]) < float(r[1]) for r in rows)


def test_bound_needs_a_frequency():
    assert run("bound", "--beta-s", 8)[0] == cli.EXIT_PARSE


def test_bound_domain_error():
    assert run("bound", "--omega-l", -15, "--beta-s", 10)[0] == cli.EXIT_PARSE


# -- design -------------------------------------------------------------------


def test_design_writes_outputs(spec_file, tmp_path):
    code, out, _ = run("design", spec_file, "-o", tmp_path / "d")
    assert code == 0
    report = json.loads((tmp_path / "d" / "report.json").read_text())
    assert report["schema_version"] == designer.SCHEMA_VERSION
    assert report["frequencies"]["g_on_MHz"] == pytest.approx(-12.33, abs=0.01)
    assert report["capacitances_fF"]["C_qq"] == pytest.approx(0.128, rel=0.05)
    assert (tmp_path / "d" / "sweep.csv").read_text().startswith(cli.CSV_HEADER + "\n")


def test_design_infeasible(tmp_path):
    path = tmp_path / "neg.json"
    path.write_text(json.dumps(designer.reference_ggg_spec("on_below_off", "negative").to_dict()))
    code, _, err = run("design", path, "-o", tmp_path)
    assert code == cli.EXIT_INFEASIBLE
    assert "[solve]" in err


def test_design_bad_spec(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run("design", path, "-o", tmp_path)[0] == cli.EXIT_PARSE
    path.write_text(json.dumps({"topology": "G-G-G"}))
    assert run("design", path, "-o", tmp_path)[0] == cli.EXIT_PARSE


# -- verify -------------------------------------------------------------------


def test_verify_nm_network(net_file, tmp_path):
    code, out, _ = run("verify", net_file, "--wq", 6.61, "-o", tmp_path)
    assert code == cli.EXIT_OK
    data = json.loads((tmp_path / "verify.json").read_text())
    assert data["method"] == "nm"
    assert all(c["passed"] is not False for c in data["checks"])
    assert any(c["label"].startswith("zero crossing") for c in data["checks"])


def test_verify_design_report(spec_file, tmp_path):
    assert run("design", spec_file, "-o", tmp_path)[0] == 0
    code, out, _ = run("verify", tmp_path / "report.json")
    assert code == cli.EXIT_OK
    assert "42/42" in out


def test_verify_charge(net_file):
    code, out, _ = run("verify", net_file, "--wq", 6.61, "--method", "charge")
    assert code == cli.EXIT_OK
    assert "anharmonicity" in out
    assert "warning" not in out


def test_verify_reports_failure(net_file):
    # a two-charge cutoff is far too small; the oracle drifts outside tolerance
    code, out, _ = run("verify", net_file, "--wq", 6.61, "--method", "charge", "--n-cut", 2)
    assert code == cli.EXIT_CHECK_FAILED
    assert "warning: charge truncation" in out


def test_verify_needs_qubit_frequency(net_file):
    assert run("verify", net_file)[0] == cli.EXIT_PARSE


# -- errors and environment ---------------------------------------------------


@pytest.mark.parametrize("argv", [[], ["bogus"], ["analyze"], ["analyze", "x.json"], ["check-zero", "x.json", "--beta-s", "a"]])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == cli.EXIT_PARSE
    assert err.startswith("qcq:")


def test_missing_file():
    code, _, err = run("analyze", "no/such/file.json", "--wq", 6)
    assert code == cli.EXIT_PARSE
    assert "cannot read input" in err


def test_invalid_network(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"elements": [{"id": "q1", "type": "X"}]}))
    code, _, err = run("analyze", path, "--wq", 6, "-o", tmp_path)
    assert code == cli.EXIT_PARSE
    assert "invalid input" in err


def test_atomic_write_leaves_no_temp_files(tmp_path):
    cli.atomic_write(tmp_path / "x.txt", "a\n")
    cli.atomic_write(tmp_path / "x.txt", "b\n")
    assert [p.name for p in tmp_path.iterdir()] == ["x.txt"]
    assert (tmp_path / "x.txt").read_bytes() == b"b\n"


def test_write_json_rejects_nan(tmp_path):
    cli.write_json(tmp_path / "r.json", {"v": math.nan})
    assert json.loads((tmp_path / "r.json").read_text()) == {"v": None}


def test_output_independent_of_locale(net_file, tmp_path):
    outputs = []
    for i, loc in enumerate(("C", "de_DE.UTF-8")):
        env = {**os.environ, "LC_ALL": loc, "LANG": loc}
        outdir = tmp_path / str(i)
        proc = subprocess.run(
            [sys.executable, "-m", "qcq.cli", "analyze", str(net_file), "--wq", "6.61", "-o", str(outdir)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        outputs.append((proc.stdout.replace(str(outdir), ""), (outdir / "sweep.csv").read_bytes()))
    assert outputs[0] == outputs[1]
