import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from emsched import DivisibleScheduler, Job, LptScheduler, Machine

MACHINES = [
    Machine("m1", mu=10.0, gamma=0.0),
    Machine("m2", mu=10.0, gamma=9.0),
]


class TestDivisibleScheduler:
    def test_fit_learns_working_set(self):
        model = DivisibleScheduler().fit(MACHINES)
        # indexed order puts m2 first (power delta 1 < 10); prefix energies tie
        # at 100 so the smaller working set wins
        assert model.r_ == 1
        assert model.working_set_ == ("m2",)

    def test_predict_scalar_in_input_order(self):
        model = DivisibleScheduler().fit(MACHINES)
        work = model.predict(10.0)
        assert work.shape == (2,)
        assert work[0] == 0.0  # m1 idles
        assert work[1] == pytest.approx(10.0)

    def test_predict_batch(self):
        model = DivisibleScheduler().fit(MACHINES)
        work = model.predict([10.0, 20.0])
        assert work.shape == (2, 2)
        assert work[1, 1] == pytest.approx(20.0)

    def test_predictions_conserve_work(self):
        rows = np.array([[4.0, 1.0, 2.0], [7.0, 0.5, 1.0], [3.0, 2.0, 3.0]])
        model = DivisibleScheduler().fit(rows)
        work = model.predict(12.0)
        assert work.sum() == pytest.approx(12.0)

    def test_array_input(self):
        model = DivisibleScheduler().fit(np.array([[2.0, 0.0], [100.0, 0.0]]))
        assert model.r_ == 1
        assert model.working_set_ == ("m1",)

    def test_solve_full_solution(self):
        model = DivisibleScheduler().fit(MACHINES)
        solution = model.solve(10.0)
        assert solution.energy.total == pytest.approx(100.0)

    def test_unfitted_predict_raises(self):
        with pytest.raises(NotFittedError):
            DivisibleScheduler().predict(1.0)

    def test_get_params_round_trip(self):
        model = DivisibleScheduler(regime="identical_speed", search="binary")
        assert model.get_params() == {"regime": "identical_speed", "search": "binary"}
        twin = clone(model)
        assert twin.get_params() == model.get_params()

    def test_forced_regime_matches_auto_on_identical_fleet(self):
        auto = DivisibleScheduler().fit(MACHINES)
        forced = DivisibleScheduler(regime="different_speed").fit(MACHINES)
        assert forced.solve(10.0).energy.total == pytest.approx(auto.solve(10.0).energy.total)


class TestLptScheduler:
    def test_predict_labels_jobs_with_machine_positions(self):
        machines = [Machine("a", 1.0, 1.0), Machine("b", 1.0, 1.0)]
        model = LptScheduler().fit(machines)
        labels = model.predict([3.0, 3.0, 2.0, 2.0, 2.0])
        assert labels.shape == (5,)
        assert set(labels) <= {0, 1}
        loads = [sum(w for w, l in zip([3, 3, 2, 2, 2], labels) if l == i) for i in (0, 1)]
        assert sorted(loads, reverse=True) == [7, 5]

    def test_schedule_returns_certificate(self):
        machines = [Machine("a", 1.0, 1.0), Machine("b", 1.0, 1.0)]
        solution = LptScheduler().fit(machines).schedule(
            [Job("j1", 3.0), Job("j2", 3.0), Job("j3", 2.0), Job("j4", 2.0), Job("j5", 2.0)]
        )
        assert solution.makespan == pytest.approx(7.0)
        assert solution.certificate.ratio_limit == pytest.approx(7 / 6)

    def test_different_speed_dispatch(self):
        machines = [Machine("fast", 1.0, 0.0, 2.0), Machine("slow", 1.0, 0.0, 1.0)]
        model = LptScheduler().fit(machines)
        labels = model.predict([4.0, 2.0, 2.0])
        assert labels.dtype.kind == "i"

    def test_unfitted_raises(self):
        with pytest.raises(NotFittedError):
            LptScheduler().predict([1.0])

    def test_weights_array_input(self):
        machines = np.array([[1.0, 1.0], [1.0, 1.0]])
        labels = LptScheduler().fit(machines).predict(np.array([5.0, 4.0, 3.0]))
        assert len(labels) == 3
