import pytest

from emsched import (
    DimensionMismatchError,
    UndefinedRatioError,
    WorkingCountError,
    admission_gain_identical,
    incompatibility_report,
    optimal_r_identical,
    optimal_working_set_different,
    working_energy_ratio,
)

from conftest import fleet_from, preindexed


class TestOptimalRIdentical:
    def test_second_machine_worth_engaging(self):
        # prefix energies 190 then 100
        indexed = preindexed([(10, 0), (10, 9)])
        solution = optimal_r_identical(indexed, 10.0)
        assert solution.r == 2
        assert solution.makespan == pytest.approx(5.0)
        assert solution.energy.total == pytest.approx(100.0)
        assert solution.working_set == ("m1", "m2")
        assert solution.per_machine_work == {"m1": 5.0, "m2": 5.0}

    def test_expensive_machine_left_idle(self):
        # prefix energies 20 then 510
        indexed = preindexed([(2, 0), (100, 0)])
        solution = optimal_r_identical(indexed, 10.0)
        assert solution.r == 1
        assert solution.makespan == pytest.approx(10.0)
        assert solution.energy.total == pytest.approx(20.0)

    def test_equal_powers_engage_everything(self):
        indexed = preindexed([(3, 3), (5, 5), (9, 9), (2, 2)])
        solution = optimal_r_identical(indexed, 12.0)
        assert solution.r == 4

    def test_tie_prefers_fewer_machines(self):
        # both prefixes cost 100
        indexed = preindexed([(10, 0), (10, 0)])
        solution = optimal_r_identical(indexed, 10.0)
        assert solution.r == 1
        assert solution.energy.total == pytest.approx(100.0)

    def test_zero_work_degenerates(self):
        indexed = preindexed([(10, 0), (10, 9)])
        solution = optimal_r_identical(indexed, 0.0)
        assert solution.r == 1
        assert solution.makespan == 0.0
        assert solution.energy.total == 0.0

    def test_binary_search_agrees_on_unimodal_instance(self):
        indexed = preindexed([(1, 0), (3, 0), (50, 0)])
        linear = optimal_r_identical(indexed, 30.0, search="linear")
        binary = optimal_r_identical(indexed, 30.0, search="binary")
        assert linear.r == binary.r

    def test_working_machines_finish_together(self):
        indexed = preindexed([(4, 1), (5, 1), (6, 2)])
        solution = optimal_r_identical(indexed, 9.0)
        for machine_id in solution.working_set:
            tau = solution.per_machine_work[machine_id]  # unit speeds
            assert tau == pytest.approx(solution.makespan)
        for machine_id, work in solution.per_machine_work.items():
            if machine_id not in solution.working_set:
                assert work == 0.0


class TestAdmissionGainIdentical:
    def test_zero_deltas_zero_gain(self):
        indexed = preindexed([(10, 0), (10, 9)])
        assert admission_gain_identical(indexed, 2, [0.0]) == 0.0

    def test_gain_matches_prefix_energy_drop(self):
        # equal-split handover of 5 units: gain 90 = 190 - 100
        indexed = preindexed([(10, 0), (10, 9)])
        assert admission_gain_identical(indexed, 2, [5.0]) == pytest.approx(90.0)

    def test_identical_machines_without_idle_power_indifferent(self):
        indexed = preindexed([(7, 0), (7, 0)])
        assert admission_gain_identical(indexed, 2, [3.0]) == 0.0

    def test_wrong_delta_count_rejected(self):
        indexed = preindexed([(10, 0), (10, 9)])
        with pytest.raises(DimensionMismatchError):
            admission_gain_identical(indexed, 2, [1.0, 2.0])

    def test_r_below_two_rejected(self):
        indexed = preindexed([(10, 0), (10, 9)])
        with pytest.raises(WorkingCountError):
            admission_gain_identical(indexed, 1, [])


class TestOptimalWorkingSetDifferent:
    def test_slow_duplicate_not_admitted(self):
        # head rate 10/2 = 5 is not above the candidate's 10/1
        indexed = preindexed([(10, 0, 2), (10, 0, 1)])
        solution = optimal_working_set_different(indexed, 8.0)
        assert solution.r == 1
        assert solution.working_set == ("m1",)
        assert solution.makespan == pytest.approx(4.0)
        assert solution.energy.total == pytest.approx(5 * 8.0)

    def test_costly_machine_not_admitted(self):
        indexed = preindexed([(1, 0, 1), (4, 0, 1)])
        solution = optimal_working_set_different(indexed, 6.0)
        assert solution.r == 1
        assert solution.energy.total == pytest.approx(6.0)

    def test_single_machine_closed_form(self):
        indexed = preindexed([(10, 3, 2)])
        solution = optimal_working_set_different(indexed, 4.0)
        assert solution.r == 1
        assert solution.makespan == pytest.approx(2.0)
        assert solution.energy.total == pytest.approx(4.0 * (10 - 3 + 3) / 2)

    def test_work_split_proportional_to_speed(self):
        # candidate ratio 1 < head rate 5, so both run and finish together
        indexed = preindexed([(10, 0, 2), (1, 0, 1)])
        solution = optimal_working_set_different(indexed, 8.0)
        assert solution.r == 2
        assert solution.makespan == pytest.approx(8 / 3)
        assert solution.per_machine_work["m1"] == pytest.approx(16 / 3)
        assert solution.per_machine_work["m2"] == pytest.approx(8 / 3)
        assert solution.energy.total == pytest.approx(8 * 11 / 3)

    def test_equality_does_not_admit(self):
        # candidate ratio exactly equals the working-set rate
        indexed = preindexed([(10, 0, 2), (5, 0, 1)])
        solution = optimal_working_set_different(indexed, 10.0)
        assert solution.r == 1

    def test_zero_work_degenerates(self):
        indexed = preindexed([(10, 0, 2), (5, 0, 1)])
        solution = optimal_working_set_different(indexed, 0.0)
        assert solution.r == 1
        assert solution.energy.total == 0.0


class TestGreedyBlindSpot:
    # a fast machine can win the solo-key head position while its
    # power-delta-per-speed is poor; the optimal subset then drops it and the
    # greedy prefix answer is beaten by a non-prefix subset
    FLEET = [(18.8, 2.3, 45.0), (1.32, 0.83, 9.1), (1.27, 0.75, 9.4)]

    def test_known_nonprefix_optimum(self):
        from emsched import index_different, is_prefix_mask, oracle_divisible

        indexed = index_different(fleet_from(self.FLEET))
        assert indexed.fleet.ids[0] == "m1"  # head by solo key
        greedy = optimal_working_set_different(indexed, 10.0)
        best = oracle_divisible(indexed.fleet, 10.0)
        assert best.best_energy < greedy.energy.total * (1 - 1e-9)
        assert not is_prefix_mask(int(best.best_config))

    def test_blind_spot_has_ordering_witnesses(self):
        from emsched import index_different, ordering_anomalies

        indexed = index_different(fleet_from(self.FLEET))
        witnesses = ordering_anomalies(indexed)
        assert witnesses
        # at least one witness: slower machine wins on delta-per-speed yet
        # loses the single-admission energy comparison
        assert any(
            w.slower_ratio < w.faster_ratio and w.slower_gain_rate > w.faster_gain_rate
            for w in witnesses
        )


class TestWorkingEnergyRatio:
    def test_full_fleet_ratio_is_one(self):
        indexed = preindexed([(10, 0), (10, 9)])
        assert working_energy_ratio(indexed, 2) == 1.0

    def test_partial_fleet(self):
        indexed = preindexed([(10, 0), (10, 9)])
        assert working_energy_ratio(indexed, 1) == pytest.approx(10 / 19)

    def test_no_idle_power_means_one(self):
        indexed = preindexed([(4, 0), (9, 0), (2, 0)])
        for r in (1, 2, 3):
            assert working_energy_ratio(indexed, r) == 1.0

    def test_out_of_range(self):
        indexed = preindexed([(4, 0)])
        with pytest.raises(WorkingCountError):
            working_energy_ratio(indexed, 2)

    def test_all_zero_powers_undefined(self):
        indexed = preindexed([(0, 0), (0, 0)])
        with pytest.raises(UndefinedRatioError):
            working_energy_ratio(indexed, 1)


class TestIncompatibilityReport:
    def test_no_conflict_when_all_machines_optimal(self):
        indexed = preindexed([(10, 0), (10, 9)])
        report = incompatibility_report(indexed, 10.0)
        assert report.energy_optimal_r == 2
        assert report.ratio_optimal_r == 2
        assert not report.conflict
        assert report.ratios == pytest.approx((10 / 19, 1.0))

    def test_conflict_flagged(self):
        # energy wants one machine (30 vs 510), ratio wants both
        indexed = preindexed([(2, 0), (100, 1)])
        report = incompatibility_report(indexed, 10.0)
        assert report.energies == pytest.approx((30.0, 510.0))
        assert report.energy_optimal_r == 1
        assert report.ratio_optimal_r == 2
        assert report.conflict

    def test_single_machine_never_conflicts(self):
        indexed = preindexed([(5, 2)])
        report = incompatibility_report(indexed, 3.0)
        assert report.energy_optimal_r == report.ratio_optimal_r == 1
        assert not report.conflict
