"""CLI driver: validation diagnostics, dispatch, exit codes, reproducible reports."""

import json
import subprocess
import sys

import pytest

from imhyp.driver import main, render_report, run, validate
from imhyp.errors import ConfigError, NumericalFailure
import imhyp.driver as driver_mod


def cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_negative_cutoff(self):
        diags = validate({"command": "spectrum", "cutoff": -3})
        assert any("cutoff must be positive" in d for d in diags)

    def test_unknown_key_suggestion(self):
        diags = validate({"command": "spectrum", "cutoff": 10, "bcc": "neumann"})
        assert diags == ["unknown key 'bcc' (did you mean 'bc'?)"]

    def test_valid_config_is_clean(self):
        assert validate({"command": "spectrum", "cutoff": 10}) == []

    def test_unknown_command_suggestion(self):
        diags = validate({"command": "spectrun"})
        assert "did you mean 'spectrum'" in diags[0]

    def test_missing_required_key(self):
        diags = validate({"command": "anhim", "nu": 0.5})
        assert any("missing required key 'cutoff'" in d for d in diags)

    def test_bad_choice(self):
        diags = validate({"command": "spectrum", "cutoff": 1, "bc": "mixed"})
        assert any("bc must be one of" in d for d in diags)

    def test_unparseable_value(self):
        diags = validate({"command": "spectrum", "cutoff": "ten"})
        assert any(d.startswith("cutoff:") for d in diags)


class TestRun:
    def test_report_shape(self):
        report = run({"command": "gaps", "cutoff": 30})
        assert set(report) == {
            "tool", "version", "command", "config", "result", "verdict",
        }
        assert report["tool"] == "imhyp"
        assert report["command"] == "gaps"
        assert report["config"]["bc"] == "neumann"
        assert report["config"]["dim"] == 3
        assert report["result"]["max_gap"] == 2.0

    def test_reports_are_byte_deterministic(self):
        config = {"command": "anhim", "field": "cubic-scalar",
                  "nu": 0.5, "cutoff": 200}
        text1 = render_report(run(config))
        text2 = render_report(run(dict(config)))
        assert text1 == text2

    def test_timing_is_opt_in(self):
        base = run({"command": "gaps", "cutoff": 30})
        timed = run({"command": "gaps", "cutoff": 30, "timing": "true"})
        assert "timing_seconds" not in base
        assert timed["timing_seconds"] >= 0.0

    def test_invalid_config_raises(self):
        with pytest.raises(ConfigError):
            run({"command": "gaps", "cutoff": -1})

    def test_float_rendering_17_digits(self):
        assert '"x": 0.10000000000000001' in render_report({"x": 0.1})
        assert '"y": 0.5' in render_report({"y": 0.5})


class TestCertificates:
    def test_anhim_empty_certificate_schema(self, tmp_path):
        cert_path = tmp_path / "cert.json"
        report = run({
            "command": "anhim", "field": "cubic-scalar", "nu": 0.5,
            "cutoff": 200, "cert": str(cert_path),
        })
        cert = report["result"]
        assert set(cert) == {"mode", "cutoff", "result", "equilibria", "caveat"}
        assert cert["mode"] == "ANHIM"
        assert cert["result"] == "empty"
        assert cert["equilibria"] == ["0", "+1", "-1"]
        assert cert["caveat"] == "valid up to cutoff"
        on_disk = json.loads(cert_path.read_text())
        assert on_disk == cert

    def test_anhim_witness_certificate(self):
        report = run({
            "command": "anhim", "field": "cubic-scalar", "nu": 2.0,
            "cutoff": 1000,
        })
        cert = report["result"]
        assert cert["result"] == {"gamma_lo": -225.0, "gamma_hi": -222.0, "n": 757}
        assert "n=757" in report["verdict"]

    def test_nhim_dims_with_certificate(self):
        report = run({
            "command": "nhim-dims", "field": "cubic-scalar", "nu": 0.5,
            "cutoff": 60,
        })
        result = report["result"]
        assert len(result["equilibria"]) == 3
        assert result["certificate"]["mode"] == "NHIM"
        assert result["certificate"]["result"]["n"] == 7

    def test_nhim_dims_single_jacobian(self):
        report = run({
            "command": "nhim-dims", "jacs": "-2", "nu": 0.5, "cutoff": 60,
        })
        eq = report["result"]["equilibria"][0]
        assert eq["dims"] == sorted(eq["dims"])
        assert "certificate" not in report["result"]


class TestMainExitCodes:
    def test_success(self, capsys):
        code, out, err = cli(capsys, "gaps", "--cutoff", "30")
        assert code == 0
        assert '"verdict"' in out and err == ""

    def test_config_error(self, capsys):
        code, out, err = cli(capsys, "gaps", "--cutoff", "-1")
        assert code == 1
        assert "config error" in err and "cutoff must be positive" in err

    def test_unknown_command(self, capsys):
        code, _, err = cli(capsys, "spectrun")
        assert code == 1
        assert "did you mean 'spectrum'" in err

    def test_hypothesis_not_met(self, capsys):
        code, _, err = cli(
            capsys, "delta", "--field", "prop35-float", "--at", "0.5,0.5"
        )
        assert code == 2
        assert "hypothesis not met" in err

    def test_lemma41_nonpositive_difference(self, capsys):
        code, _, err = cli(
            capsys, "lemma41", "--jac0", "-2", "--jac1", "1", "--gap-bound", "3"
        )
        assert code == 2

    def test_numerical_failure_maps_to_3(self, capsys, monkeypatch):
        def boom(_params):
            raise NumericalFailure("forced")

        monkeypatch.setitem(driver_mod.RUNNERS, "gaps", boom)
        code, _, err = cli(capsys, "gaps", "--cutoff", "30")
        assert code == 3
        assert "numerical failure" in err

    def test_help_and_version(self, capsys):
        assert cli(capsys, "--help")[0] == 0
        code, out, _ = cli(capsys, "--version")
        assert code == 0 and out.startswith("imhyp ")

    def test_flag_without_value(self, capsys):
        code, _, err = cli(capsys, "gaps", "--cutoff")
        assert code == 1
        assert "needs a value" in err


class TestFilesAndConfig:
    def test_out_writes_report_file(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, out, _ = cli(
            capsys, "gaps", "--cutoff", "30", "--out", str(out_path)
        )
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["command"] == "gaps"
        # verdict echoed to stdout when the report goes to a file
        assert report["verdict"] in out

    def test_spectrum_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "spec.csv"
        code, _, _ = cli(
            capsys, "spectrum", "--cutoff", "30", "--csv", str(csv_path)
        )
        assert code == 0
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "lambda,multiplicity"
        assert len(lines) > 10

    def test_config_file_with_cli_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"command": "gaps", "cutoff": 30}))
        code, out, _ = cli(
            capsys, "gaps", "--config", str(cfg), "--cutoff", "50"
        )
        assert code == 0
        report = json.loads(out)
        assert report["config"]["cutoff"] == 50.0

    def test_config_file_command_mismatch(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"command": "gaps", "cutoff": 30}))
        code, _, err = cli(capsys, "spectrum", "--config", str(cfg))
        assert code == 1
        assert "is for command" in err

    def test_threads_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("IMHYP_THREADS", "2")
        code, out, _ = cli(capsys, "gaps", "--cutoff", "30")
        assert code == 0
        assert json.loads(out)["config"]["threads"] == 2

    def test_threads_env_invalid(self, capsys, monkeypatch):
        monkeypatch.setenv("IMHYP_THREADS", "lots")
        code, _, err = cli(capsys, "gaps", "--cutoff", "30")
        assert code == 1
        assert "IMHYP_THREADS" in err

    def test_sap_scan_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "scan.csv"
        code, out, _ = cli(
            capsys, "sap-scan", "--h", "cos-x1", "--k", "1", "--rho", "1",
            "--lambda-max", "40", "--csv", str(csv_path),
        )
        assert code == 0
        header = csv_path.read_text().split("\n", 1)[0]
        assert header == "lambda,k,window_modes,op_norm,h2_norm,eps_eff,gap,rho_ok"
        report = json.loads(out)
        assert report["result"]["windows"] > 0
        assert report["result"]["headline"]["eps_eff"] >= 0.0

    def test_field_and_jacs_conflict(self, capsys):
        code, _, err = cli(
            capsys, "anhim", "--field", "cubic-scalar", "--jacs", "1",
            "--nu", "0.5", "--cutoff", "60",
        )
        assert code == 1
        assert "exactly one" in err

    def test_unknown_builtin_field(self, capsys):
        code, _, err = cli(
            capsys, "fixed-points", "--field", "missing.json"
        )
        assert code == 1
        assert "neither" in err

    def test_scalar_field_rejected_for_planar_command(self, capsys):
        code, _, err = cli(capsys, "fixed-points", "--field", "cubic-scalar")
        assert code == 1
        assert "planar" in err


class TestSubprocessEntry:
    def test_module_invocation_round_trip(self):
        proc = subprocess.run(
            [sys.executable, "-m", "imhyp.driver", "gaps", "--cutoff", "30"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["result"]["witness"] == [6.0, 8.0]

    def test_stdout_bytes_reproducible(self):
        runs = [
            subprocess.run(
                [sys.executable, "-m", "imhyp.driver", "prop34"],
                capture_output=True, text=True, timeout=120,
            )
            for _ in range(2)
        ]
        assert runs[0].returncode == 0
        assert runs[0].stdout == runs[1].stdout
