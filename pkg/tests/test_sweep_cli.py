"""Sweep orchestration, CSV emission and the command-line interface."""

import logging
import math

import numpy as np
import pytest

from ris_ntn_sim import (
    CSV_HEADER,
    Architecture,
    FadingSpec,
    SimConfig,
    build_geometry,
    derive_trial_seed,
    emit_csv,
    generate_channels,
    optimize,
    run_sweep,
)
from ris_ntn_sim.cli import main
from ris_ntn_sim.sweep import _metadata_path

SMALL = SimConfig(trials=6, elements_sweep=(4, 8), architectures=("sc", "fc"), seed=3)


def csv_bytes(tmp_path, records, cfg, name="out.csv"):
    path = tmp_path / name
    emit_csv(records, path, cfg)
    return path.read_bytes()


class TestRunSweep:
    def test_record_counting_and_order(self):
        records = run_sweep(SMALL)
        trials = [r for r in records if isinstance(r.trial, int)]
        means = [r for r in records if r.trial == "mean"]
        stderrs = [r for r in records if r.trial == "stderr"]
        assert len(trials) == 2 * 2 * 6
        assert len(means) == 4
        assert len(stderrs) == 4
        # canonical order: arch label, then elements, then trials, then aggregates
        keys = [(r.arch, r.elements) for r in records]
        assert keys == sorted(keys)
        per_cell = [r.trial for r in records[:8]]
        assert per_cell == [0, 1, 2, 3, 4, 5, "mean", "stderr"]

    def test_identical_runs_are_byte_identical(self, tmp_path):
        a = csv_bytes(tmp_path, run_sweep(SMALL), SMALL, "a.csv")
        b = csv_bytes(tmp_path, run_sweep(SMALL), SMALL, "b.csv")
        assert a == b

    def test_worker_count_does_not_change_output(self, tmp_path):
        base = run_sweep(SMALL, workers=1)
        for workers in (2, 5):
            assert run_sweep(SMALL, workers=workers) == base

    def test_seed_changes_output(self, tmp_path):
        other = SimConfig(trials=6, elements_sweep=(4, 8), architectures=("sc", "fc"), seed=4)
        assert run_sweep(SMALL) != run_sweep(other)

    def test_incompatible_gc_cells_are_skipped_with_warning(self, caplog):
        cfg = SimConfig(trials=2, elements_sweep=(8, 9), architectures=("gc:3",), seed=1)
        with caplog.at_level(logging.WARNING, logger="ris_ntn_sim.sweep"):
            records = run_sweep(cfg)
        assert any("does not divide" in rec.message for rec in caplog.records)
        assert {r.elements for r in records} == {9}

    def test_aggregates_match_trial_statistics(self):
        records = run_sweep(SMALL)
        for arch in ("sc", "fc"):
            for m in (4, 8):
                cell = [r for r in records if r.arch == arch and r.elements == m]
                ees = np.array([r.ee_bits_per_joule for r in cell if isinstance(r.trial, int)])
                mean = next(r for r in cell if r.trial == "mean")
                stderr = next(r for r in cell if r.trial == "stderr")
                assert mean.ee_bits_per_joule == pytest.approx(ees.mean(), rel=1e-12)
                assert stderr.ee_bits_per_joule == pytest.approx(
                    ees.std(ddof=1) / math.sqrt(len(ees)), rel=1e-12
                )

    def test_trial_records_are_reproducible_from_their_seed(self):
        records = run_sweep(SMALL)
        record = next(r for r in records if r.arch == "fc" and r.elements == 8 and r.trial == 2)
        geom = build_geometry(SMALL)
        ch = generate_channels(geom, SMALL.fading_spec, 8, record.seed,
                               direct_blocked=True)
        result = optimize(ch, Architecture.fully_connected())
        assert result.objective == record.h_eff_mag

    def test_single_trial_has_zero_stderr(self):
        cfg = SimConfig(trials=1, elements_sweep=(4,), architectures=("sc",))
        records = run_sweep(cfg)
        stderr = next(r for r in records if r.trial == "stderr")
        assert stderr.ee_bits_per_joule == 0.0


class TestTrialSeeds:
    def test_injective_over_cells(self):
        seen = set()
        archs = [Architecture.single_connected(), Architecture.fully_connected(),
                 Architecture.group_connected(4), Architecture.group_connected(16)]
        for arch in archs:
            for m in (1, 8, 64, 65535):
                for trial in (0, 1, 999, 2**31 - 1):
                    seen.add(derive_trial_seed(42, arch, m, trial))
        assert len(seen) == len(archs) * 4 * 4

    def test_depends_on_run_seed(self):
        arch = Architecture.single_connected()
        assert derive_trial_seed(1, arch, 8, 0) != derive_trial_seed(2, arch, 8, 0)

    def test_bounds_enforced(self):
        arch = Architecture.single_connected()
        with pytest.raises(ValueError):
            derive_trial_seed(1, arch, 0, 0)
        with pytest.raises(ValueError):
            derive_trial_seed(1, arch, 70000, 0)
        with pytest.raises(ValueError):
            derive_trial_seed(1, arch, 8, 2**31)


class TestEmitCsv:
    def test_header_exact(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path, SMALL)
        assert path.read_text() == CSV_HEADER + "\n"

    def test_one_record_two_lines(self, tmp_path):
        records = run_sweep(SimConfig(trials=1, elements_sweep=(4,), architectures=("sc",)))
        path = tmp_path / "one.csv"
        emit_csv(records[:1], path, SMALL)
        assert len(path.read_text().splitlines()) == 2

    def test_floats_round_trip_exactly(self, tmp_path):
        records = run_sweep(SMALL)
        path = tmp_path / "rt.csv"
        emit_csv(records, path, SMALL)
        lines = path.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        for line, record in zip(lines[1:], records):
            cols = line.split(",")
            assert cols[0] == record.arch
            assert int(cols[1]) == record.elements
            assert float(cols[3]) == record.h_eff_mag
            assert float(cols[4]) == record.snr_db
            assert float(cols[5]) == record.rate_bps
            assert float(cols[6]) == record.ee_bits_per_joule
            assert int(cols[7]) == record.seed

    def test_metadata_sidecar(self, tmp_path):
        path = tmp_path / "run.csv"
        emit_csv(run_sweep(SMALL), path, SMALL)
        meta = _metadata_path(path)
        assert meta.name == "run.meta.txt"
        text = meta.read_text()
        assert text.startswith("generated_at = ")
        assert "dBm/Hz" in text
        assert "trials = 6" in text

    def test_metadata_deterministic_after_timestamp(self, tmp_path):
        records = run_sweep(SMALL)
        emit_csv(records, tmp_path / "a.csv", SMALL)
        emit_csv(records, tmp_path / "b.csv", SMALL)
        tail = lambda p: p.read_text().split("\n", 1)[1]
        assert tail(_metadata_path(tmp_path / "a.csv")) == tail(_metadata_path(tmp_path / "b.csv"))


class TestCli:
    def test_budget_prints_path_loss(self, capsys):
        assert main(["budget", "--distance-m", "600000", "--freq-hz", "19e9"]) == 0
        out = capsys.readouterr().out
        value = float(out.split("=")[1].strip())
        assert abs(value - 173.586) <= 0.001

    def test_validate_ok(self, tmp_path, capsys):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("trials = 5\n")
        assert main(["validate", "--config", str(cfg_file)]) == 0
        out = capsys.readouterr().out
        assert "config ok" in out
        assert "trials = 5" in out

    def test_validate_rejects_typo(self, tmp_path, capsys):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("tx_powr_dbm = 50\n")
        assert main(["validate", "--config", str(cfg_file)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("ris-ntn-sim: error: config:")
        assert "tx_powr_dbm" in err

    def test_missing_config_file_is_a_config_error(self, tmp_path, capsys):
        assert main(["validate", "--config", str(tmp_path / "nope.cfg")]) == 2

    def test_sweep_end_to_end(self, tmp_path, capsys):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("trials = 4\nelements_sweep = 4, 8\narchitectures = sc, fc\n")
        out_csv = tmp_path / "out.csv"
        assert main(["sweep", "--config", str(cfg_file), "--out", str(out_csv)]) == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 2 * 2 * 4 + 8
        assert _metadata_path(out_csv).exists()
        assert "wrote" in capsys.readouterr().out

    def test_sweep_flag_overrides(self, tmp_path):
        out_csv = tmp_path / "out.csv"
        args = ["sweep", "--out", str(out_csv), "--trials", "2",
                "--seed", "9", "--arch", "gc:4", "--workers", "2"]
        assert main(args) == 0
        lines = out_csv.read_text().splitlines()
        body = [line.split(",") for line in lines[1:]]
        assert {cols[0] for cols in body} == {"gc:4"}
        assert len(body) == 8 * 2 + 16  # default sweep has 8 element counts
        assert "seed = 9" in _metadata_path(out_csv).read_text()

    def test_sweep_bad_arch_flag_is_config_error(self, tmp_path, capsys):
        out_csv = tmp_path / "out.csv"
        assert main(["sweep", "--out", str(out_csv), "--arch", "bogus"]) == 2

    def test_sweep_unwritable_output_is_runtime_error(self, tmp_path, capsys):
        out_csv = tmp_path / "missing_dir" / "out.csv"
        code = main(["sweep", "--out", str(out_csv), "--trials", "1",
                     "--arch", "sc"])
        assert code == 3
        assert capsys.readouterr().err.startswith("ris-ntn-sim: error: runtime:")
