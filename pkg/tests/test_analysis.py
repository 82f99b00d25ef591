import math

import numpy as np
import pytest

from lzsm.core import DomainError, Method, Spinor
from lzsm.analysis import (
    COMPARE_HEADER,
    DEVIATION_HEADER,
    SCHEMA_VERSION,
    SweepConfig,
    compare_dynamics,
    compare_rows_to_csv,
    deviation_map,
    deviation_map_to_csv,
    format_float,
    jump_time,
    jump_time_numeric,
)

JUMP_TIME_05 = 2.1545615581154242  # 30-digit oracle
SQRT_2PI = 2.5066282746310002


class TestSweepConfig:
    def test_grid(self):
        cfg = SweepConfig((0.1,), -5.0, 5.0, 11)
        assert cfg.tau_grid[0] == -5.0 and cfg.tau_grid[-1] == 5.0
        assert len(cfg.tau_grid) == 11

    def test_validation(self):
        with pytest.raises(DomainError):
            SweepConfig((), -5.0, 5.0, 11)
        with pytest.raises(DomainError):
            SweepConfig((-0.1,), -5.0, 5.0, 11)
        with pytest.raises(DomainError):
            SweepConfig((0.1,), 5.0, -5.0, 11)
        with pytest.raises(DomainError):
            SweepConfig((0.1,), -5.0, 5.0, 1)
        with pytest.raises(DomainError):
            SweepConfig((0.1,), -5.0, 5.0, 11, format="yaml")


class TestJumpTime:
    def test_delta_zero_closed_form(self):
        assert jump_time(0.0) == pytest.approx(SQRT_2PI, rel=1e-15)

    def test_small_delta_limit(self):
        assert jump_time(1e-8) == pytest.approx(SQRT_2PI, abs=1e-6)

    def test_pinned_value(self):
        assert jump_time(0.5) == pytest.approx(JUMP_TIME_05, rel=1e-13)

    def test_matches_finite_difference_definition(self):
        for d in np.geomspace(0.01, 2.0, 9):
            assert abs(jump_time(d) - jump_time_numeric(d)) <= 1e-4

    def test_guards(self):
        with pytest.raises(DomainError):
            jump_time(-0.1)
        with pytest.raises(DomainError):
            jump_time_numeric(0.0)


@pytest.fixture(scope="module")
def rows():
    cfg = SweepConfig((0.2,), -10.0, 10.0, 9)
    return compare_dynamics(cfg)


@pytest.fixture(scope="module")
def dm():
    deltas = np.array([0.05, 0.2])
    taus = np.linspace(-8.0, 8.0, 81)
    return deviation_map(deltas, taus, Spinor(0j, 1.0 + 0j))


class TestCompareDynamics:
    def test_row_count_and_order(self, rows):
        assert len(rows) == 9 * 4
        # grid-major: the first four rows share the first tau
        assert all(r["tau"] == -10.0 for r in rows[:4])
        assert [r["method"] for r in rows[:4]] == [
            "ode", "zener", "majorana", "adiabatic_impulse",
        ]

    def test_schema_keys(self, rows):
        expect = COMPARE_HEADER.split(",")
        for r in rows:
            assert list(r) == expect

    def test_ode_norm(self, rows):
        for r in rows:
            if r["method"] == "ode":
                assert r["norm"] == pytest.approx(1.0, abs=1e-9)

    def test_methods_agree_on_final_population(self, rows):
        finals = {r["method"]: r for r in rows if r["tau"] == 10.0}
        p_ode = finals["ode"]["p_alpha"]
        assert finals["zener"]["p_alpha"] == pytest.approx(p_ode, abs=1e-6)
        assert finals["majorana"]["p_alpha"] == pytest.approx(p_ode, abs=1e-2)
        assert finals["adiabatic_impulse"]["p_alpha"] == pytest.approx(
            p_ode, abs=2e-2
        )

    def test_guarded_cell_is_nan(self, rows):
        mid = [r for r in rows if r["tau"] == 0.0 and r["method"] == "majorana"]
        assert len(mid) == 1
        assert math.isnan(mid[0]["re_alpha"])

    def test_jump_window_flag(self, rows):
        tj = jump_time(0.2)
        for r in rows:
            assert r["in_jump_window"] == int(abs(r["tau"]) < tj)

    def test_single_delta_enforced(self):
        with pytest.raises(DomainError):
            compare_dynamics(SweepConfig((0.1, 0.2), -5.0, 5.0, 5))

    def test_method_subset(self):
        cfg = SweepConfig((0.1,), -8.0, 8.0, 5, methods=(Method.ZENER,))
        rows = compare_dynamics(cfg)
        assert len(rows) == 5
        assert {r["method"] for r in rows} == {"zener"}


class TestDeviationMap:
    def test_shapes(self, dm):
        assert dm.grid.shape == (2, 81)
        assert dm.jump_curve.shape == (2,)
        assert dm.flagged.shape == (2, 81)

    def test_far_field_agreement(self, dm):
        far = np.abs(dm.tau_values) >= 6.0
        assert np.nanmax(dm.grid[:, far]) < 0.01

    def test_window_contains_crossing(self, dm):
        for i in range(2):
            win = dm.empirical_window(i)
            assert win is not None
            lo, hi = win
            assert lo < 0.0 < hi

    def test_inside_mean_dominates(self, dm):
        for i in range(2):
            mi, mo = dm.inside_outside_means(i)
            assert mi > mo

    def test_guard_cells_flagged(self):
        dm = deviation_map([0.1], np.array([-1.0, 0.0, 1.0]),
                           Spinor(0j, 1.0 + 0j))
        assert dm.flagged[0, 1]
        assert math.isnan(dm.p_majorana[0, 1])
        assert not dm.flagged[0, 0]

    def test_centroid_finite(self, dm):
        c = dm.signed_tau_centroid()
        assert -8.0 <= c <= 8.0

    def test_input_guards(self):
        with pytest.raises(DomainError):
            deviation_map([0.1], [0.5], Spinor(1 + 0j, 1 + 0j))
        with pytest.raises(DomainError):
            deviation_map([0.1], [0.5], Spinor(0j, 1 + 0j), anchor_tau=-2.0)


class TestSerialization:
    def test_format_float(self):
        assert format_float(0.1) == "0.10000000000000001"
        assert format_float(float("nan")) == "nan"
        assert format_float(-2.0) == "-2"

    def test_compare_csv_layout(self):
        cfg = SweepConfig((0.1,), -8.0, 8.0, 3, methods=(Method.ZENER,))
        text = compare_rows_to_csv(compare_dynamics(cfg))
        lines = text.splitlines()
        assert lines[0] == f"# schema={SCHEMA_VERSION} table=compare"
        assert lines[1] == COMPARE_HEADER
        assert len(lines) == 2 + 3
        assert text.endswith("\n")

    def test_deviation_csv_layout(self):
        dm = deviation_map([0.1], np.array([-6.0, 0.0, 6.0]),
                           Spinor(0j, 1.0 + 0j))
        lines = deviation_map_to_csv(dm).splitlines()
        assert lines[0] == f"# schema={SCHEMA_VERSION} table=deviation"
        assert lines[1] == DEVIATION_HEADER
        assert len(lines) == 2 + 3
        # guarded cell serialized as the literal 'nan'
        assert lines[3].split(",")[3] == "nan"

    def test_deterministic(self):
        cfg = SweepConfig((0.3,), -6.0, 6.0, 4, methods=(Method.ZENER,))
        a = compare_rows_to_csv(compare_dynamics(cfg))
        b = compare_rows_to_csv(compare_dynamics(cfg))
        assert a == b
