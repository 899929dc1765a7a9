"""End-to-end command-line workflows."""

import json

import numpy as np
import pytest

from hftphase import SamplingConfig, embed, fileio, hft_forward
from hftphase.cli import main, parse_config

from conftest import GOLD_3X3, GOLD_9X9, PROBE_3X3, random_complex


def run_cli(*args):
    return main([str(a) for a in args])


@pytest.fixture
def probe_field(tmp_path):
    path = tmp_path / "probe.cfld"
    fileio.write_field(path, PROBE_3X3)
    return path


class TestSimulate:
    def test_golden_3x3_magnitude(self, tmp_path, probe_field):
        out = tmp_path / "sim1"
        assert run_cli("simulate", "--object", probe_field, "--r", 1, "--out", out) == 0
        a = fileio.read_measurement(out / "measurement.mag1")
        np.testing.assert_allclose(np.fft.fftshift(a), GOLD_3X3, atol=1e-3)

    def test_golden_9x9_magnitude(self, tmp_path, probe_field):
        out = tmp_path / "sim3"
        assert run_cli("simulate", "--object", probe_field, "--r", 3, "--out", out) == 0
        a = fileio.read_measurement(out / "measurement.mag1")
        np.testing.assert_allclose(np.fft.fftshift(a), GOLD_9X9, atol=1e-3)

    def test_noise_free_run_is_byte_identical(self, tmp_path, probe_field):
        out = tmp_path / "a"
        assert run_cli("simulate", "--object", probe_field, "--r", 2, "--out", out) == 0
        first = {n: (out / n).read_bytes() for n in ("measurement.mag1", "measurement.png", "config_echo.txt")}
        assert run_cli("simulate", "--object", probe_field, "--r", 2, "--out", out) == 0
        for name, data in first.items():
            assert (out / name).read_bytes() == data

    def test_missing_object_file_fails(self, tmp_path, capsys):
        assert run_cli("simulate", "--object", tmp_path / "nope.cfld", "--out", tmp_path / "o") == 1
        assert "error:" in capsys.readouterr().err

    def test_noisy_run_reproducible(self, tmp_path, probe_field):
        outs = []
        for name in ("n1", "n2"):
            out = tmp_path / name
            assert (
                run_cli(
                    "simulate", "--object", probe_field, "--r", 2,
                    "--rnoi", 0.1, "--anoi", 0.5, "--seed", 7, "--out", out,
                )
                == 0
            )
            outs.append(fileio.read_measurement(out / "measurement.mag1"))
        np.testing.assert_array_equal(outs[0], outs[1])


class TestReconstruct:
    @pytest.fixture
    def measurement(self, tmp_path, rng):
        cfg = SamplingConfig(6, 6, 4)
        obj = random_complex(rng, (6, 6))
        a = np.abs(hft_forward(obj, cfg))
        mpath = tmp_path / "m.mag1"
        fileio.write_measurement(mpath, a)
        tpath = tmp_path / "truth.cfld"
        fileio.write_field(tpath, obj)
        return mpath, tpath

    def test_writes_outputs_and_alignment(self, tmp_path, measurement):
        mpath, tpath = measurement
        out = tmp_path / "rec"
        code = run_cli(
            "reconstruct", "--measurement", mpath, "--r", 4, "--mask-size", 6,
            "--iters", 400, "--tol", 0, "--restarts", 6, "--truth", tpath, "--out", out,
        )
        assert code == 0
        for name in ("recon.cfld", "recon.json", "recon_real.png", "recon_imag.png",
                     "recon_phase.png", "alignment.json", "config_echo.txt"):
            assert (out / name).exists()
        sidecar = json.loads((out / "recon.json").read_text())
        assert sidecar["iterations"] == len(sidecar["s_trace"])
        report = json.loads((out / "alignment.json").read_text())
        assert set(report) == {"flipped", "global_phase", "rel_error"}

    def test_tol_above_initial_s_converges_at_one(self, tmp_path, measurement):
        mpath, _ = measurement
        out = tmp_path / "rec1"
        assert (
            run_cli(
                "reconstruct", "--measurement", mpath, "--r", 4,
                "--tol", 1e12, "--out", out,
            )
            == 0
        )
        sidecar = json.loads((out / "recon.json").read_text())
        assert sidecar["converged"] is True
        assert sidecar["iterations"] == 1

    def test_same_config_gives_identical_trace(self, tmp_path, measurement):
        mpath, _ = measurement
        traces = []
        for name in ("r1", "r2"):
            out = tmp_path / name
            assert (
                run_cli(
                    "reconstruct", "--measurement", mpath, "--r", 4,
                    "--iters", 50, "--tol", 0, "--init", "random", "--seed", 3, "--out", out,
                )
                == 0
            )
            traces.append(json.loads((out / "recon.json").read_text())["s_trace"])
        assert traces[0] == traces[1]

    def test_indivisible_r_fails(self, tmp_path, measurement):
        mpath, _ = measurement
        assert run_cli("reconstruct", "--measurement", mpath, "--r", 5, "--out", tmp_path / "x") == 1


class TestSweep:
    def test_writes_csv(self, tmp_path, rng):
        cfg = SamplingConfig(4, 4, 2)
        a = np.abs(hft_forward(random_complex(rng, (4, 4)), cfg))
        mpath = tmp_path / "m.mag1"
        fileio.write_measurement(mpath, a)
        out = tmp_path / "sw"
        code = run_cli(
            "sweep", "--measurement", mpath, "--r", 2, "--sizes", "3:5",
            "--runs-per-size", 2, "--iters", 40, "--tol", 0, "--out", out,
        )
        assert code == 0
        lines = (out / "sweep.csv").read_text().strip().splitlines()
        assert lines[0] == "size,mean_log_s,runs"
        assert len(lines) == 4
        assert [int(line.split(",")[0]) for line in lines[1:]] == [3, 4, 5]
        assert all(line.split(",")[2] == "2" for line in lines[1:])


class TestMix:
    def test_same_object_mix_recovers_embedding(self, tmp_path, rng):
        obj = random_complex(rng, (5, 5))
        opath = tmp_path / "o.cfld"
        fileio.write_field(opath, obj)
        out = tmp_path / "mix"
        assert run_cli("mix", "--o1", opath, "--o2", opath, "--r", 3, "--out", out) == 0
        omix = fileio.read_field(out / "mix.cfld")
        np.testing.assert_allclose(omix, embed(obj, SamplingConfig(5, 5, 3)), atol=1e-10)
        assert (out / "mix_imag.png").exists()

    def test_ones_keyword(self, tmp_path, rng):
        opath = tmp_path / "o.cfld"
        fileio.write_field(opath, random_complex(rng, (4, 4)))
        out = tmp_path / "mix1"
        assert run_cli("mix", "--o1", opath, "--r", 2, "--out", out) == 0
        assert fileio.read_field(out / "mix.cfld").shape == (8, 8)


class TestIngest:
    def test_png_stack_to_measurement(self, tmp_path, rng):
        truth = rng.uniform(100, 3000, size=(16, 16))
        paths = []
        for scale in (1.0, 10.0):
            counts = np.minimum(np.round(truth / scale), 4095).astype(np.uint16)
            p = tmp_path / f"frame_{int(scale)}.png"
            fileio.write_png16(p, counts)
            paths.append(str(p))
        out = tmp_path / "ing"
        code = run_cli(
            "ingest", "--frames", ",".join(paths), "--scales", "1,10",
            "--saturation", 4095, "--despeckle", 3.0, "--out", out,
        )
        assert code == 0
        m = fileio.read_measurement(out / "measurement.mag1")
        assert m.shape == (16, 16)
        prov = json.loads((out / "provenance.json").read_text())
        assert prov["scales"] == [1.0, 10.0]
        rel = np.abs(m - truth) / truth
        assert np.median(rel) < 0.02

    def test_crop_and_bin(self, tmp_path, rng):
        grid = rng.uniform(1, 2, size=(20, 20))
        p = tmp_path / "m.mag1"
        fileio.write_measurement(p, grid)
        out = tmp_path / "ing2"
        code = run_cli(
            "ingest", "--frames", p, "--saturation", 10, "--despeckle", 0,
            "--crop", "2,2,16,16", "--bin-factor", 2, "--out", out,
        )
        assert code == 0
        assert fileio.read_measurement(out / "measurement.mag1").shape == (8, 8)


class TestConfigHandling:
    def test_config_file_with_flag_override(self, tmp_path, probe_field):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(f"object = {probe_field}\nr = 1\nseed = 4\n# comment\n")
        out = tmp_path / "sim"
        assert run_cli("simulate", "--config", cfg, "--r", 3, "--out", out) == 0
        echo = parse_config(out / "config_echo.txt")
        assert echo["r"] == "3"
        assert echo["seed"] == "4"

    def test_echo_round_trips(self, tmp_path, probe_field):
        out = tmp_path / "sim"
        assert run_cli("simulate", "--object", probe_field, "--r", 2, "--out", out) == 0
        echo = parse_config(out / "config_echo.txt")
        out2 = tmp_path / "sim2"
        echo.pop("out")
        args = ["simulate", "--out", out2]
        for key, value in echo.items():
            args += [f"--{key.replace('_', '-')}", value]
        assert run_cli(*args) == 0
        assert (out / "measurement.mag1").read_bytes() == (out2 / "measurement.mag1").read_bytes()
        echo2 = parse_config(out2 / "config_echo.txt")
        echo2.pop("out")
        assert echo2 == echo

    def test_unknown_config_key_fails(self, tmp_path, probe_field, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("bogus = 1\n")
        assert run_cli("simulate", "--config", cfg, "--object", probe_field, "--out", tmp_path / "o") == 1
        assert "bogus" in capsys.readouterr().err

    def test_missing_required_fails(self, tmp_path, capsys):
        assert run_cli("simulate", "--out", tmp_path / "o") == 1
        assert "--object" in capsys.readouterr().err
