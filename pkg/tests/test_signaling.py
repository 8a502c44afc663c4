import json
import math

import pytest

from mmwicd import signaling
from mmwicd.signaling import (
    DEFAULT_CP_FRACTION,
    SYNC_TIME_BANDWIDTH,
    build_pss_structure,
    derive_frame,
    pss_schedule,
    slot_symbol_offsets,
)

from conftest import TABULATED_B_SC, rel_err

# Transmission period and total bandwidth at the tabulated sub-carrier grid.
EXPECTED_T_PSS = {
    15e3: 5e-3,
    250e3: 0.3e-3,
    500e3: 0.15e-3,
    1e6: 75e-6,
    10e6: 7.5e-6,
}
EXPECTED_B_TOT_MHZ = {15e3: 1.4, 250e3: 23.3, 500e3: 46.7, 1e6: 93.3, 10e6: 933.3}


class TestDeriveFrame:
    @pytest.mark.parametrize("b_sc", TABULATED_B_SC)
    def test_t_pss_exact(self, b_sc):
        assert derive_frame(b_sc).t_pss == EXPECTED_T_PSS[b_sc]

    @pytest.mark.parametrize("b_sc", TABULATED_B_SC)
    def test_b_tot_within_tenth_mhz(self, b_sc):
        assert abs(derive_frame(b_sc).b_tot / 1e6 - EXPECTED_B_TOT_MHZ[b_sc]) <= 0.1

    def test_reference_point(self):
        frame = derive_frame(15e3)
        assert frame.b_tot == pytest.approx(1.4e6, rel=1e-12)
        assert frame.t_sc == 1 / 15e3

    @pytest.mark.parametrize("exponent", range(3, 10))
    def test_time_bandwidth_product_constant(self, exponent):
        # t_pss * b_tot is invariant in b_sc; the energy convergence relies on it.
        frame = derive_frame(10.0**exponent)
        assert rel_err(frame.t_pss * frame.b_tot, SYNC_TIME_BANDWIDTH) < 1e-9
        assert frame.time_bandwidth == frame.t_pss * frame.b_tot

    def test_sync_time_bandwidth_value(self):
        # 72 sub-carriers times the 75 s*Hz scan constant over the occupancy ratio
        assert SYNC_TIME_BANDWIDTH == pytest.approx(7000.0, rel=1e-12)

    def test_scaling_is_inverse_proportional(self):
        base = derive_frame(15e3)
        scaled = derive_frame(30e3)
        assert scaled.t_pss == base.t_pss / 2
        assert scaled.b_tot == pytest.approx(base.b_tot * 2, rel=1e-12)

    @pytest.mark.parametrize("bad", [0, -15e3])
    def test_rejects_nonpositive_bandwidth(self, bad):
        with pytest.raises(ValueError):
            derive_frame(bad)

    @pytest.mark.parametrize("bad", [0.0, -0.1, 1.5])
    def test_rejects_bad_utilization(self, bad):
        with pytest.raises(ValueError):
            derive_frame(15e3, utilization=bad)

    def test_json_round_trip(self):
        frame = derive_frame(250e3)
        data = json.loads(frame.to_json())
        assert data["b_sc"] == 250e3
        assert data["t_pss"] == frame.t_pss


class TestPssStructure:
    def test_degenerate_k1(self):
        frame = derive_frame(250e3)
        structure = build_pss_structure(frame, 1)
        assert structure.b_sc_pss == frame.b_sc
        assert structure.t_sc_pss == structure.t_sc
        assert structure.pss_per_slot == 1

    def test_k8_widens_and_shortens(self):
        frame = derive_frame(250e3)
        structure = build_pss_structure(frame, 8)
        assert structure.b_sc_pss == 2e6
        assert structure.t_sc_pss == structure.t_sc / 8
        assert structure.cp == DEFAULT_CP_FRACTION * structure.t_sc_pss

    def test_custom_cp_fraction(self):
        structure = build_pss_structure(derive_frame(250e3), 4, cp_fraction=0.25)
        assert structure.cp == 0.25 * structure.t_sc_pss

    @pytest.mark.parametrize("bad", [0, -1, True, 2.0])
    def test_rejects_bad_k(self, bad):
        with pytest.raises(ValueError):
            build_pss_structure(derive_frame(250e3), bad)

    @pytest.mark.parametrize("bad", [-0.1, 1.0])
    def test_rejects_bad_cp_fraction(self, bad):
        with pytest.raises(ValueError):
            build_pss_structure(derive_frame(250e3), 2, cp_fraction=bad)

    @pytest.mark.parametrize("k", [1, 2, 4, 8, 16])
    def test_symbol_offsets_layout(self, k):
        structure = build_pss_structure(derive_frame(250e3), k)
        offsets = slot_symbol_offsets(structure)
        assert len(offsets) == k
        assert offsets[0] == structure.cp
        spacing = structure.cp + structure.t_sc_pss
        for j in range(1, k):
            assert offsets[j] == pytest.approx(offsets[j - 1] + spacing, rel=1e-12)
        # all k symbols (and their prefixes) fit well inside one base slot
        assert offsets[-1] + structure.t_sc_pss < structure.frame.t_pss


class TestPssSchedule:
    def test_full_sweep_in_eight_slots(self):
        structure = build_pss_structure(derive_frame(250e3), 8)
        schedule = pss_schedule(structure, 64)
        assert len(schedule) == 64
        directions = [entry[0] for entry in schedule]
        assert directions == list(range(64))
        # 64 directions at 8 per slot occupy exactly 8 base slots
        last_start = schedule[-1][1]
        assert math.floor(last_start / structure.frame.t_pss) == 7

    def test_start_times_and_durations(self):
        structure = build_pss_structure(derive_frame(250e3), 4)
        offsets = slot_symbol_offsets(structure)
        for direction, start, duration in pss_schedule(structure, 10):
            slot, sym = divmod(direction, 4)
            assert start == pytest.approx(slot * structure.frame.t_pss + offsets[sym], rel=1e-12)
            assert duration == structure.t_sc_pss

    def test_partial_last_slot(self):
        structure = build_pss_structure(derive_frame(250e3), 7)
        schedule = pss_schedule(structure, 64)
        assert len(schedule) == 64
        # ceil(64 / 7) = 10 slots, last one holds a single transmission
        assert math.floor(schedule[-1][1] / structure.frame.t_pss) == 9

    def test_rejects_bad_direction_count(self):
        structure = build_pss_structure(derive_frame(250e3), 2)
        with pytest.raises(ValueError):
            pss_schedule(structure, 0)


def test_module_constants():
    assert signaling.B_SC_REF == 15e3
    assert signaling.T_PSS_REF == 5e-3
    assert signaling.PSS_TIME_SCALE == 75.0
    assert signaling.SUBCARRIERS_PER_RB * signaling.RBS_FOR_SYNC == 72
