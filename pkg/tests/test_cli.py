import json
import math

import numpy as np
import pytest

from subideal import __version__
from subideal.cli import main
from subideal.csvio import read_signal_csv, read_table, signal_to_csv
from subideal.spectral import SampledSignal

FIG3_ARGS = ["--alpha", "6.3925", "--beta", "0.1", "--q", "0.9"]
UNIT_ARGS = ["--alpha", "1", "--beta", "1", "--q", "0.5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestFreqz:
    def test_matched_with_reference(self, tmp_path, capsys):
        out = tmp_path / "f.csv"
        code, _, _ = run(
            capsys, "freqz", "--alpha", "from-matched", "--mu", "0.1", "--beta", "0.01", "--q", "0.99",
            "--samples", "3", "--reference", "--out", str(out),
        )
        assert code == 0
        header, data, meta = read_table(out)
        assert header == ["omega", "re", "im", "gain", "phase_rad", "ref_gain"]
        assert meta["artifact_version"] == __version__
        assert meta["config"]["filter"]["alpha"] == pytest.approx(6.36645953060005, rel=1e-12)
        np.testing.assert_allclose(data[:, 0], [0, 100, 200])
        assert data[1, 3] / data[1, 5] == pytest.approx(1.47681883795243, rel=1e-9)
        np.testing.assert_allclose(np.hypot(data[:, 1], data[:, 2]), data[:, 3], rtol=1e-12)

    def test_single_dc_row(self, capsys):
        code, out, _ = run(capsys, "freqz", *UNIT_ARGS, "--omega-min", "0", "--omega-max", "0")
        assert code == 0
        rows = [line for line in out.splitlines() if not line.startswith("#")]
        assert rows[0] == "omega,re,im,gain,phase_rad"
        assert len(rows) == 2
        assert float(rows[1].split(",")[3]) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "freqz", *UNIT_ARGS, "--samples", "5", "--format", "json")
        payload = json.loads(out)
        assert code == 0 and len(payload["columns"]["gain"]) == 5

    def test_from_matched_needs_mu(self, capsys):
        code, _, err = run(capsys, "freqz", "--alpha", "from-matched", "--beta", "0.1", "--q", "0.9")
        assert code == 2 and "mu" in err


class TestImpulse:
    def test_meta_and_dc(self, tmp_path, capsys):
        out = tmp_path / "h.csv"
        assert run(capsys, "impulse", *FIG3_ARGS, "--out", str(out))[0] == 0
        h = read_signal_csv(out)
        assert h.meta["grid"]["omega_max"] == pytest.approx(39.96)
        assert h.meta["causality_defect"] <= 1e-4
        assert float(np.sum(h.values) * h.dt) == pytest.approx(0.44719, abs=1e-4)

    def test_output_dir_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SUBIDEAL_OUTPUT_DIR", str(tmp_path))
        assert run(capsys, "impulse", *UNIT_ARGS, "--out", "h.csv")[0] == 0
        assert (tmp_path / "h.csv").exists()

    def test_bad_samples(self, capsys):
        assert run(capsys, "impulse", *UNIT_ARGS, "--samples", "100")[0] == 2


class TestApply:
    @pytest.fixture
    def impulse_file(self, tmp_path):
        dt = 0.05
        x = SampledSignal(0.0, dt, np.r_[1 / dt, np.zeros(511)])
        path = tmp_path / "x.csv"
        path.write_text(signal_to_csv(x))
        return path

    @pytest.mark.parametrize("mode", ["direct", "fft", "stream"])
    def test_impulse_reproduces_kernel(self, impulse_file, tmp_path, capsys, mode):
        y_path, h_path = tmp_path / "y.csv", tmp_path / "h.csv"
        grid = ["--omega-max", repr(math.pi / 0.05), "--samples", "1024"]
        assert run(capsys, "apply", *UNIT_ARGS, *grid, "--input", str(impulse_file), "--mode", mode,
                   "--chunk", "37", "--out", str(y_path))[0] == 0
        assert run(capsys, "impulse", *UNIT_ARGS, *grid, "--out", str(h_path))[0] == 0
        y, h = read_signal_csv(y_path), read_signal_csv(h_path)
        causal = h.values[h.times >= -1e-9]
        np.testing.assert_allclose(y.values, causal[: len(y)], atol=1e-12)

    def test_rate_mismatch_is_failure(self, impulse_file, capsys):
        code, _, err = run(capsys, "apply", *UNIT_ARGS, "--input", str(impulse_file), "--omega-max", "3")
        assert code == 1 and "SamplingRateMismatch" in err

    def test_missing_input(self, tmp_path, capsys):
        assert run(capsys, "apply", *UNIT_ARGS, "--input", str(tmp_path / "none.csv"))[0] == 2

    def test_malformed_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,value\n0,1\n1,2\n5,3\n")
        assert run(capsys, "apply", *UNIT_ARGS, "--input", str(bad))[0] == 2


class TestVerify:
    def test_pass_exit_zero(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "verify", "--alpha", "from-matched", "--mu", "0.1", "--beta", "0.1", "--q", "0.9",
                         "--check", "ratio", "--check", "causality", "--out", str(out))
        assert code == 0
        report = json.loads(out.read_text())
        assert [c["name"] for c in report["checks"]] == ["causality", "ratio"]
        assert report["checks"][1]["values"]["ratio"] == pytest.approx(38.6510097787051, rel=1e-10)

    def test_fail_exit_one(self, capsys):
        code, out, _ = run(capsys, "verify", *FIG3_ARGS, "--mu", "1", "--check", "causality",
                           "--threshold", "causality=1e-30")
        assert code == 1
        assert json.loads(out)["checks"][0]["verdict"] == "fail"

    @pytest.mark.parametrize(
        "extra",
        [["--check", "nope"], ["--threshold", "nope=1"], ["--threshold", "pw"], ["--threshold", "pw=abc"]],
    )
    def test_config_errors(self, capsys, extra):
        assert run(capsys, "verify", *FIG3_ARGS, "--mu", "1", *extra)[0] == 2

    def test_needs_mu(self, capsys):
        assert run(capsys, "verify", *FIG3_ARGS)[0] == 2


class TestFigures:
    def test_files_and_determinism(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(capsys, "figures", "--out", str(a))[0] == 0
        assert run(capsys, "figures", "--out", str(b))[0] == 0
        names = ["fig1_gain.csv", "fig2_identity_error.csv", "fig3_impulse.csv"]
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes()
        header, data, meta = read_table(a / "fig1_gain.csv")
        assert header == ["omega", "ref_gain", "gain_q0.99", "gain_q0.9"]
        assert meta["config"]["mu"] == 0.1
        header, data, _ = read_table(a / "fig2_identity_error.csv")
        mid = np.argmin(np.abs(data[:, 0]))
        assert data[mid, 2] == pytest.approx(1 - math.exp(-0.1 * math.sqrt(0.1)), rel=1e-12)
        assert np.all(data[:, 3] <= data[:, 2])
        h = read_signal_csv(a / "fig3_impulse.csv")
        assert h.meta["config"]["filter"] == {"alpha": 6.3925, "beta": 0.1, "q": 0.9}


class TestUsage:
    def test_unknown_command(self, capsys):
        assert run(capsys, "bogus")[0] == 2

    def test_invalid_params(self, capsys):
        assert run(capsys, "freqz", "--alpha", "1", "--beta", "1", "--q", "1.5")[0] == 2
        assert run(capsys, "freqz", "--alpha", "x", "--beta", "1", "--q", "0.5")[0] == 2

    def test_version(self, capsys):
        assert run(capsys, "--version")[0] == 0
