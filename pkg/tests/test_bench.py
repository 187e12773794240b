import itertools

import numpy as np
import pytest

from ft3d import DOUBLE, SINGLE, Measurement
from ft3d.bench import _random_tensor, compare_against_fixture, run_bench


class FakeClock:
    """Deterministic clock: advances a fixed step on every call.

    Any work done outside a (start, stop) call pair is invisible to it, so
    measured means depend only on how many times the harness reads the clock.
    """

    def __init__(self, step_s=0.001):
        self.step = step_s
        self.t = 0.0
        self.calls = 0

    def __call__(self):
        self.calls += 1
        self.t += self.step
        return self.t


class TestRunBench:
    def test_single_iteration_row(self):
        run = run_bench([16], iters=1)
        assert run.failures == []
        (r,) = run.results
        assert r.n == 16 and r.iters == 1
        assert r.stddev_ms == 0.0
        assert r.min_ms == r.mean_ms

    def test_iters_must_be_positive(self):
        with pytest.raises(ValueError):
            run_bench([16], iters=0)

    def test_seeded_inputs_reproducible(self):
        a = _random_tensor(16, seed=7)
        b = _random_tensor(16, seed=7)
        c = _random_tensor(16, seed=8)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_timing_covers_only_execute_windows(self):
        clock = FakeClock(step_s=0.002)
        run = run_bench([8, 16], iters=5, timer=clock)
        # one start/stop pair per timed iteration; warm-up and input
        # generation never touch the clock
        assert clock.calls == 2 * 5 * 2
        for r in run.results:
            assert r.mean_ms == pytest.approx(2.0)
            assert r.stddev_ms == pytest.approx(0.0, abs=1e-9)
            assert r.min_ms == pytest.approx(2.0)

    def test_mean_and_min_consistent(self):
        run = run_bench([8], iters=4)
        (r,) = run.results
        assert r.min_ms <= r.mean_ms

    def test_failed_size_does_not_abort_others(self):
        run = run_bench([12, 8], iters=1)
        assert [r.n for r in run.results] == [8]
        assert len(run.failures) == 1
        assert run.failures[0][0] == 12

    def test_precision_recorded(self):
        run = run_bench([8], spec=SINGLE, iters=1)
        assert run.results[0].precision == SINGLE


class TestCompareAgainstFixture:
    def fixture(self):
        return [
            Measurement(n=16, kernel_ms=0.11, pcie_ms=0.05, fftw_ms=0.01),
            Measurement(n=32, kernel_ms=0.22, pcie_ms=0.21, fftw_ms=0.03),
        ]

    def results(self, sizes):
        return run_bench(sizes, spec=DOUBLE, iters=1).results

    def test_ratio_columns_populated(self):
        table = compare_against_fixture(self.results([16, 32]), self.fixture())
        assert table.warning is None
        assert [r.n for r in table.rows] == [16, 32]
        for row in table.rows:
            assert row.vs_fftw == pytest.approx(row.mean_ms / row.fftw_ms)
            assert row.vs_kernel == pytest.approx(row.mean_ms / row.kernel_ms)

    def test_no_overlap_warns_with_empty_table(self):
        table = compare_against_fixture(self.results([8]), self.fixture())
        assert table.rows == []
        assert "no overlapping" in table.warning

    def test_unmatched_fixture_rows_skipped_and_listed(self):
        table = compare_against_fixture(self.results([16]), self.fixture())
        assert [r.n for r in table.rows] == [16]
        assert table.skipped == [32]
        assert "32" in table.warning

    def test_empty_results_empty_table(self):
        table = compare_against_fixture([], self.fixture())
        assert table.rows == [] and table.warning is not None


def test_comparison_handles_every_overlap_pattern():
    fixture = [Measurement(n=n, kernel_ms=0.1 * n) for n in (16, 32)]
    for sizes in itertools.chain.from_iterable(
        itertools.combinations((8, 16, 32), k) for k in range(3)
    ):
        results = run_bench(list(sizes), iters=1).results
        table = compare_against_fixture(results, fixture)
        assert {r.n for r in table.rows} == {16, 32} & set(sizes)
