"""Tests for the command-line data exporters."""

import json

import pytest
from pytest import approx

from spindiscord import cli
from spindiscord.spinchain import ConvergenceError


def run(argv):
    return cli.main(argv)


def cache_args(tmp_path):
    return ["--cache-dir", str(tmp_path / "cache")]


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


class TestGroundStateCommand:
    def test_prints_energy(self, tmp_path, capsys):
        code = run(["ground-state", "--n", "4", "--delta", "1.0"] + cache_args(tmp_path))
        out = capsys.readouterr().out
        assert code == 0
        energy = float(out.splitlines()[0].split()[1])
        assert out.startswith("energy ")
        assert energy == approx(-2.0, abs=1e-9)

    def test_odd_ring_is_usage_error(self, tmp_path, capsys):
        code = run(["ground-state", "--n", "3", "--delta", "1.0"] + cache_args(tmp_path))
        err = capsys.readouterr().err
        assert code == 1
        assert "even" in err

    def test_ferromagnetic_regime_is_usage_error(self, tmp_path, capsys):
        code = run(["ground-state", "--n", "12", "--delta", "-2.0"] + cache_args(tmp_path))
        err = capsys.readouterr().err
        assert code == 1
        assert "polarized" in err

    def test_tolerance_window_enforced(self, tmp_path, capsys):
        code = run(
            ["ground-state", "--n", "4", "--delta", "1.0", "--tol", "1e-3"]
            + cache_args(tmp_path)
        )
        capsys.readouterr()
        assert code == 1

    def test_json_document(self, tmp_path, capsys):
        code = run(
            ["ground-state", "--n", "4", "--delta", "1.0", "--format", "json"]
            + cache_args(tmp_path)
        )
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["energy"] == approx(-2.0, abs=1e-9)
        assert doc["config"]["n"] == 4
        assert doc["cache"].endswith(".bin")

    def test_writes_cache_entry(self, tmp_path, capsys):
        cache = tmp_path / "warm"
        code = run(["ground-state", "--n", "6", "--delta", "0.5", "--cache-dir", str(cache)])
        capsys.readouterr()
        assert code == 0
        assert list(cache.glob("gs_n06_*.bin"))

    def test_env_var_sets_cache_dir(self, tmp_path, capsys, monkeypatch):
        cache = tmp_path / "from_env"
        monkeypatch.setenv("SPINDISCORD_CACHE", str(cache))
        code = run(["ground-state", "--n", "4", "--delta", "1.0"])
        capsys.readouterr()
        assert code == 0
        assert list(cache.glob("gs_n04_*.bin"))


class TestUsage:
    def test_no_command(self, capsys):
        assert run([]) == 1
        capsys.readouterr()

    def test_help_exits_clean(self, capsys):
        assert run(["--help"]) == 0
        capsys.readouterr()

    def test_bad_range(self, capsys):
        assert run(["fig1", "--delta-range", "1:0:0.5"]) == 1
        assert run(["fig1", "--delta-range", "0.5-1.5"]) == 1
        capsys.readouterr()

    def test_bad_separation_list(self, tmp_path, capsys):
        code = run(["fig3", "--n", "4", "--rs", "a,b"] + cache_args(tmp_path))
        assert code == 1
        capsys.readouterr()

    def test_bad_quadrature(self, tmp_path, capsys):
        code = run(["fig5", "--n", "4", "--quadrature", "256"] + cache_args(tmp_path))
        assert code == 1
        capsys.readouterr()

    def test_undersized_scheme_rejected(self, tmp_path, capsys):
        code = run(
            ["fig5", "--n", "4", "--scheme", "angle", "--quadrature", "16x16"]
            + cache_args(tmp_path)
        )
        assert code == 1
        capsys.readouterr()


class TestFig1:
    def test_curves_peak_at_critical_point(self, capsys):
        code = run(["fig1", "--deterministic"])
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["t", "nn", "far"]
        assert len(rows) == 201
        by_t = {row[0]: (float(row[1]), float(row[2])) for row in rows}
        assert by_t["1.0"] == (1.0, 1.0)
        for t, (nn, far) in by_t.items():
            if t != "1.0":
                assert nn < 1.0
                assert far < 1.0

    def test_timestamp_suppressed(self, capsys):
        run(["fig1", "--delta-range", "0.5:1.5:0.5"])
        stamped = capsys.readouterr().out
        run(["fig1", "--delta-range", "0.5:1.5:0.5", "--deterministic"])
        plain = capsys.readouterr().out
        assert stamped.startswith("# generated ")
        assert plain.startswith("t,nn,far")
        assert stamped.splitlines()[1:] == plain.splitlines()


class TestFig2:
    def test_profile_rows(self, tmp_path, capsys):
        code = run(
            ["fig2", "--n", "8", "--delta", "1.0", "--deterministic"]
            + cache_args(tmp_path)
        )
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["delta", "r", "discord", "symmetric_form", "isotropic_form"]
        assert [int(row[1]) for row in rows] == [1, 2, 3, 4]
        for row in rows:
            assert float(row[2]) == approx(float(row[4]), abs=1e-9)


class TestFig3:
    def test_header_and_polarized_rows(self, tmp_path, capsys):
        code = run(
            ["fig3", "--n", "4", "--rs", "1", "--delta-range", "-1.5:1.5:0.5",
             "--deterministic"] + cache_args(tmp_path)
        )
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["delta", "r", "discord", "k", "basis"]
        by_delta = {row[0]: row for row in rows}
        assert float(by_delta["-1.5"][2]) == 0.0
        assert by_delta["-1.5"][4] == "zero"
        assert float(by_delta["1.0"][2]) > 0.0


class TestFig4:
    def test_basis_switch_columns(self, tmp_path, capsys):
        code = run(
            ["fig4", "--n", "8", "--rs", "1", "--delta-range", "0.5:1.5:1",
             "--deterministic"] + cache_args(tmp_path)
        )
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["delta", "r", "k", "basis"]
        assert rows[0][3] == "ninety"
        assert rows[-1][3] == "zero"
        assert float(rows[0][2]) > 2.0 > float(rows[-1][2])


class TestFig5:
    def test_single_bin_at_isotropic_point(self, tmp_path, capsys):
        out_file = tmp_path / "hist.csv"
        code = run(
            ["fig5", "--n", "8", "--delta", "1.0", "--r", "1", "--deterministic",
             "--out", str(out_file)] + cache_args(tmp_path)
        )
        capsys.readouterr()
        assert code == 0
        header, rows = parse_csv(out_file.read_text())
        assert header == ["bin_left", "bin_right", "mass"]
        assert len(rows) == 1
        assert float(rows[0][2]) == approx(1.0, abs=1e-9)
        summary = json.loads((tmp_path / "hist.summary.json").read_text())
        assert summary["variance"] == approx(0.0, abs=1e-10)
        assert float(rows[0][0]) <= summary["mean"] <= float(rows[0][1])
        assert summary["scheme"] == {"kind": "gauss", "n_theta": 256, "n_phi": 256}

    def test_json_embeds_summary(self, tmp_path, capsys):
        code = run(
            ["fig5", "--n", "4", "--delta", "1.0", "--r", "1", "--format", "json",
             "--deterministic"] + cache_args(tmp_path)
        )
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["columns"] == ["bin_left", "bin_right", "mass"]
        assert sum(row[2] for row in doc["rows"]) == approx(1.0, abs=1e-9)
        assert doc["summary"]["min_c"] <= doc["summary"]["mean"] <= doc["summary"]["max_c"]

    def test_monte_carlo_scheme(self, tmp_path, capsys):
        code = run(
            ["fig5", "--n", "4", "--delta", "0.5", "--r", "1", "--scheme", "mc",
             "--samples", "2000", "--deterministic"] + cache_args(tmp_path)
        )
        out = capsys.readouterr().out
        assert code == 0
        _, rows = parse_csv(out)
        assert sum(float(row[2]) for row in rows) == approx(1.0, abs=1e-9)


class TestFig6:
    def test_moment_columns(self, tmp_path, capsys):
        code = run(
            ["fig6", "--n", "8", "--rs", "1", "--delta-range", "0.5:1.5:0.5",
             "--quadrature", "32x32", "--deterministic"] + cache_args(tmp_path)
        )
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["delta", "r", "mean_c", "var_c", "min_c", "max_c"]
        by_delta = {row[0]: row for row in rows}
        assert float(by_delta["1.0"][3]) == approx(0.0, abs=1e-10)
        assert float(by_delta["0.5"][3]) > 1e-4


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["fig3", "--n", "8", "--rs", "1,2", "--delta-range", "0.5:1.5:0.25",
                "--deterministic"] + cache_args(tmp_path)
        assert run(argv + ["--out", str(a)]) == 0
        assert run(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        # second run is served from cache; bytes must not change
        assert a.read_bytes() == b.read_bytes()

    def test_json_reruns_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["fig6", "--n", "4", "--rs", "1", "--delta-range", "0.5:1.5:0.5",
                "--quadrature", "32x32", "--format", "json",
                "--deterministic"] + cache_args(tmp_path)
        assert run(argv + ["--out", str(a)]) == 0
        assert run(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestIncompleteSweep:
    def test_partial_csv_gets_trailer(self, tmp_path, capsys, monkeypatch):
        real = cli.discord_profile_vs_delta

        def failing(n_sites, deltas, rs, **kwargs):
            if deltas[0] > 1.0:
                raise ConvergenceError("stalled")
            return real(n_sites, deltas, rs, **kwargs)

        monkeypatch.setattr(cli, "discord_profile_vs_delta", failing)
        out_file = tmp_path / "partial.csv"
        code = run(
            ["fig3", "--n", "4", "--rs", "1", "--delta-range", "0.5:1.5:0.5",
             "--deterministic", "--out", str(out_file)] + cache_args(tmp_path)
        )
        err = capsys.readouterr().err
        assert code == 2
        assert "stalled" in err
        lines = out_file.read_text().strip().splitlines()
        assert lines[-1] == "# INCOMPLETE"
        assert lines[0] == "delta,r,discord,k,basis"
        assert len(lines) == 4

    def test_partial_json_flagged(self, tmp_path, capsys, monkeypatch):
        real = cli.discord_profile_vs_delta

        def failing(n_sites, deltas, rs, **kwargs):
            if deltas[0] > 1.0:
                raise ConvergenceError("stalled")
            return real(n_sites, deltas, rs, **kwargs)

        monkeypatch.setattr(cli, "discord_profile_vs_delta", failing)
        out_file = tmp_path / "partial.json"
        code = run(
            ["fig3", "--n", "4", "--rs", "1", "--delta-range", "0.5:1.5:0.5",
             "--format", "json", "--deterministic", "--out", str(out_file)]
            + cache_args(tmp_path)
        )
        capsys.readouterr()
        assert code == 2
        doc = json.loads(out_file.read_text())
        assert doc["incomplete"] is True
        assert len(doc["rows"]) == 2

    def test_failure_with_no_rows_writes_nothing(self, tmp_path, capsys, monkeypatch):
        def always_failing(n_sites, deltas, rs, **kwargs):
            raise ConvergenceError("stalled")

        monkeypatch.setattr(cli, "discord_profile_vs_delta", always_failing)
        out_file = tmp_path / "never.csv"
        code = run(
            ["fig3", "--n", "4", "--rs", "1", "--delta-range", "0.5:1.5:0.5",
             "--deterministic", "--out", str(out_file)] + cache_args(tmp_path)
        )
        capsys.readouterr()
        assert code == 2
        assert not out_file.exists()
