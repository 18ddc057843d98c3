import math

import numpy as np
import pytest

from chiralwalk.bloch import SymmetryClass
from chiralwalk.gibbs import GibbsFamily
from chiralwalk.scan import (
    CSV_HEADER,
    PRECISION_EXTENDED,
    SweepConfig,
    SweepRecord,
    SweepStats,
    run_sweep,
    write_csv,
)


def small_config(**kw):
    defaults = dict(
        symmetry_class=SymmetryClass.BDI,
        family=GibbsFamily.SP1,
        theta_min=0.5,
        theta_max=0.8,
        theta_step=0.05,
        T_min=0.05,
        T_max=0.25,
        T_step=0.05,
        dtheta=0.01,
        dT=0.01,
        n_k=64,
    )
    defaults.update(kw)
    return SweepConfig(**defaults)


class TestSweepConfig:
    def test_zero_displacement_rejected(self):
        with pytest.raises(ValueError):
            small_config(dtheta=0.0, dT=0.0)

    def test_bad_grids_rejected(self):
        with pytest.raises(ValueError):
            small_config(T_min=0.0)
        with pytest.raises(ValueError):
            small_config(theta_step=-0.01)
        with pytest.raises(ValueError):
            small_config(theta_max=0.1)  # below theta_min
        with pytest.raises(ValueError):
            small_config(precision="double-double")

    def test_grid_generation(self):
        cfg = small_config()
        assert cfg.theta_grid() == pytest.approx([0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8])
        assert cfg.temperature_grid() == pytest.approx([0.05, 0.1, 0.15, 0.2, 0.25])

    def test_low_T_forces_extended_path(self):
        assert small_config(T_min=0.002).effective_extended
        assert small_config(precision=PRECISION_EXTENDED).effective_extended
        assert not small_config().effective_extended


class TestRunSweep:
    def test_grid_completeness_and_order(self):
        cfg = small_config()
        records = run_sweep(cfg)
        thetas = cfg.theta_grid()
        temps = cfg.temperature_grid()
        assert len(records) == thetas.size * temps.size
        for i, r in enumerate(records):
            assert r.theta == pytest.approx(thetas[i // temps.size])
            assert r.T == pytest.approx(temps[i % temps.size])

    def test_record_invariants(self):
        records = run_sweep(small_config(family=GibbsFamily.MB0))
        for r in records:
            assert 0.0 <= r.F <= 1.0 + 1e-12
            assert r.Delta >= -1e-10
            assert r.gap0 >= 0.0 and r.gap_pi >= 0.0

    def test_band_reuse_contract(self):
        cfg = small_config()
        stats = SweepStats()
        run_sweep(cfg, stats=stats)
        assert stats.columns == cfg.theta_grid().size
        assert stats.band_builds <= 2 * stats.columns

    def test_temperature_only_displacement_gives_zero_delta(self):
        cfg = small_config(dtheta=0.0, dT=0.01)
        for family in GibbsFamily:
            records = run_sweep(small_config(dtheta=0.0, dT=0.01, family=family))
            assert max(abs(r.Delta) for r in records) < 1e-10
        assert cfg.dtheta == 0.0

    def test_progress_lines_on_stderr(self, capsys):
        cfg = small_config()
        run_sweep(cfg, progress=True)
        err = capsys.readouterr().err
        assert err.count("theta column") == cfg.theta_grid().size

    def test_deterministic_records(self):
        cfg = small_config(family=GibbsFamily.MB1)
        a = run_sweep(cfg)
        b = run_sweep(cfg)
        assert a == b


class TestWriteCsv:
    def test_single_record_two_lines(self, tmp_path):
        path = tmp_path / "one.csv"
        write_csv([SweepRecord(0.1, 0.2, 0.9, 0.0, 1.0, 1.0, 0)], path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_csv([], tmp_path / "never.csv")

    def test_nan_row_serialized_between_intact_rows(self, tmp_path):
        records = [
            SweepRecord(0.1, 0.2, 0.9, 1e-12, 1.0, 1.0, 0),
            SweepRecord(0.1, 0.3, math.nan, math.nan, 1.0, 1.0, 0),
            SweepRecord(0.1, 0.4, 0.95, 2e-12, 1.0, 1.0, 0),
        ]
        path = tmp_path / "holes.csv"
        write_csv(records, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[2].split(",")[2] == "nan"
        assert lines[1].split(",")[2] == "0.9"
        assert lines[3].split(",")[2] == "0.95"

    def test_byte_identical_reruns(self, tmp_path):
        cfg = small_config()
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(run_sweep(cfg), p1)
        write_csv(run_sweep(cfg), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_unwritable_path_has_context(self, tmp_path):
        with pytest.raises(OSError, match="no/such"):
            write_csv([SweepRecord(0, 0.1, 1, 0, 1, 1, 0)], tmp_path / "no/such/dir.csv")
