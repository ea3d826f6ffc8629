import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from pdmsusy.cli import fmt, main

GOLDEN = Path(__file__).parent / "golden"


def _write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_uses_twelve_significant_digits():
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(2.0) == "2"
    assert fmt(1.5e-13) == "1.5e-13"


@pytest.mark.parametrize("stem,command", [("partners_small", "partners"), ("morse_spectrum", "spectrum")])
def test_golden_files(capsys, stem, command):
    code, out, err = _run(capsys, str(GOLDEN / f"{stem}.json"), command)
    assert code == 0 and err == ""
    assert out == (GOLDEN / f"{stem}.csv").read_text()


def test_partners_header_and_anchor_row(capsys):
    code, out, _ = _run(capsys, str(GOLDEN / "partners_small.json"), "partners")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["x", "m", "u", "W", "V_minus", "V_plus", "Vm_eq24", "Vm_eq25"]
    anchor = next(r for r in rows if float(r["x"]) == 1.0)
    assert float(anchor["m"]) == pytest.approx(2.25)
    assert float(anchor["u"]) == pytest.approx(1.7853981634, abs=1e-10)
    assert float(anchor["W"]) == pytest.approx(1.671281, abs=1e-6)


def test_spectrum_default_ho(capsys, tmp_path):
    cfg = _write(tmp_path, {"family": "ho", "omega": 1, "ell": 1, "delta": 2})
    code, out, err = _run(capsys, cfg, "spectrum")
    assert code == 0 and err == ""
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "E_numeric", "E_analytic", "abs_err"]
    assert len(rows) == 5
    assert all(float(r["abs_err"]) <= 5e-3 for r in rows)


def test_command_may_precede_config(capsys):
    code, out, _ = _run(capsys, "spectrum", str(GOLDEN / "morse_spectrum.json"))
    assert code == 0
    assert out == (GOLDEN / "morse_spectrum.csv").read_text()


def test_json_format(capsys, tmp_path):
    cfg = _write(tmp_path, {"family": "morse", "a": -3, "b": 1, "alpha": 1, "delta": 2, "k": 2,
                            "grid": {"x_min": -15, "x_max": 6, "n": 800}, "format": "json"})
    code, out, _ = _run(capsys, cfg, "spectrum")
    records = json.loads(out)
    assert code == 0 and [r["n"] for r in records] == [0, 1]


def test_sweep_table(capsys, tmp_path):
    cfg = _write(tmp_path, {"family": "ho", "omega": 1, "ell": 1, "k": 3, "sweep": [1, 2],
                            "grid": {"x_min": 0, "x_max": 12, "n": 1500}})
    code, out, _ = _run(capsys, cfg, "sweep")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "delta,n,E_numeric"
    assert len(lines) == 1 + 2 * 3 + 1
    label, level, spread = lines[-1].split(",")
    assert label == "max_spread" and 0 <= int(level) < 3 and float(spread) <= 1e-2


def test_out_option_writes_file_only(capsys, tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = _run(capsys, str(GOLDEN / "partners_small.json"), "partners", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "partners_small.csv").read_text()


@pytest.mark.parametrize("cfg,fragment", [
    ({"family": "ho", "omega": 1, "ell": 1, "delta": 2, "mass_exponent": 3}, "unknown key 'mass_exponent'"),
    ({"family": "quartic"}, "unknown family quartic"),
    ({"family": "morse", "a": 3, "b": 1, "alpha": 1}, "a must be negative"),
    ('{"family": "ho", ', "malformed JSON at line 1"),
    ({"family": "morse", "a": -3, "b": 1, "alpha": 1, "k": 5, "grid": {"n": 500}}, "does not exist"),
])
def test_errors_exit_2_with_no_data(capsys, tmp_path, cfg, fragment):
    code, out, err = _run(capsys, _write(tmp_path, cfg), "spectrum")
    assert code == 2
    assert out == ""
    assert fragment in err


def test_missing_file_and_bad_command(capsys, tmp_path):
    code, out, err = _run(capsys, str(tmp_path / "absent.json"), "spectrum")
    assert code == 2 and out == "" and "cannot read" in err
    code, out, err = _run(capsys, str(GOLDEN / "partners_small.json"), "plot")
    assert code == 2 and out == "" and "unknown command" in err
    code, _, _ = _run(capsys)
    assert code == 2


def test_verify_failure_exits_1(capsys, tmp_path):
    cfg = _write(tmp_path, {"family": "ho", "omega": 1, "ell": 1, "delta": 2, "k": 3,
                            "grid": {"x_min": 0, "x_max": 12, "n": 300},
                            "tolerances": {"spectrum": 1e-9}})
    code, out, err = _run(capsys, cfg, "verify")
    report = json.loads(out)
    assert code == 1 and report["overall"] is False
    assert "verification failed" in err


@pytest.mark.slow
def test_verify_default_ho_exits_0_deterministically(tmp_path):
    cfg = _write(tmp_path, {"family": "ho", "omega": 1, "ell": 1, "delta": 2})
    runs = [subprocess.run([sys.executable, "-m", "pdmsusy", cfg, "verify"], capture_output=True)
            for _ in range(2)]
    assert [r.returncode for r in runs] == [0, 0]
    assert runs[0].stdout == runs[1].stdout
    assert json.loads(runs[0].stdout)["overall"] is True
