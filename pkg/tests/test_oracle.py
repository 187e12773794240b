import numpy as np
import pytest

from ft3d import DOUBLE, dft3d_bruteforce, error_metrics, plan
from ft3d.fft3d import execute


def random_cube(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n, n)) + 1j * rng.standard_normal((n, n, n))


def literal_triple_sum(t):
    """Septuple-loop evaluation of the defining sum; oracle for the oracle."""
    n = t.shape[0]
    w = np.exp(-2j * np.pi / n)
    out = np.zeros((n, n, n), dtype=complex)
    for kx in range(n):
        for ky in range(n):
            for kz in range(n):
                acc = 0.0 + 0.0j
                for z in range(n):
                    for y in range(n):
                        for x in range(n):
                            acc += t[z, y, x] * w ** (x * kx) * w ** (y * ky) * w ** (z * kz)
                out[kz, ky, kx] = acc
    return out


class TestBruteForce:
    def test_impulse_gives_all_ones(self):
        t = np.zeros((4, 4, 4), dtype=complex)
        t[0, 0, 0] = 1.0
        np.testing.assert_allclose(dft3d_bruteforce(t), np.ones((4, 4, 4)), atol=1e-14)

    def test_single_mode_concentrates_at_its_bin(self):
        # f = exp(+i*2*pi*x/n) against the e^{-i} kernel lands n^3 in bin (1,0,0)
        n = 8
        x = np.arange(n)
        t = np.broadcast_to(np.exp(2j * np.pi * x / n), (n, n, n)).copy()
        got = dft3d_bruteforce(t)
        want = np.zeros((n, n, n), dtype=complex)
        want[0, 0, 1] = n**3  # layout [kz, ky, kx]
        np.testing.assert_allclose(got, want, atol=1e-9)

    def test_matches_literal_loop_sum(self):
        t = random_cube(4, seed=0)
        np.testing.assert_allclose(dft3d_bruteforce(t), literal_triple_sum(t), rtol=1e-11, atol=1e-11)

    def test_consistent_with_pipeline_at_double(self):
        t = random_cube(4, seed=1)
        got = execute(plan(4, DOUBLE), t)
        ref = dft3d_bruteforce(t)
        assert np.linalg.norm(got - ref) / np.linalg.norm(ref) < 1e-12

    def test_parseval_at_binary64(self):
        for n in (4, 8, 16):
            t = random_cube(n, seed=n)
            F = dft3d_bruteforce(t)
            lhs = np.sum(np.abs(t) ** 2)
            rhs = np.sum(np.abs(F) ** 2) / n**3
            assert abs(lhs - rhs) / lhs < 1e-12

    def test_cost_guard_refuses_large_sizes(self):
        with pytest.raises(ValueError, match="force"):
            dft3d_bruteforce(np.zeros((64, 64, 64)))

    def test_cost_guard_overridable(self):
        t = random_cube(64, seed=6)
        got = dft3d_bruteforce(t, force=True)
        ref = execute(plan(64, DOUBLE), t)
        assert np.linalg.norm(got - ref) / np.linalg.norm(ref) < 1e-12


class TestErrorMetrics:
    def test_identical_tensors(self):
        t = random_cube(4, seed=2)
        rep = error_metrics(t, t)
        assert rep.l2_rel == 0.0 and rep.linf_abs == 0.0

    def test_zero_against_zero_uses_convention(self):
        z = np.zeros((4, 4, 4))
        rep = error_metrics(z, z)
        assert rep.l2_rel == 0.0

    def test_half_scale(self):
        t = random_cube(4, seed=3)
        assert error_metrics(t, 2 * t).l2_rel == pytest.approx(0.5, rel=1e-12)

    def test_scale_invariance(self):
        a, b = random_cube(4, seed=4), random_cube(4, seed=5)
        base = error_metrics(a, b).l2_rel
        scaled = error_metrics(3.7 * a, 3.7 * b).l2_rel
        assert scaled == pytest.approx(base, rel=1e-12)

    def test_worst_index_reported_as_xyz(self):
        a = np.zeros((4, 4, 4), dtype=complex)
        b = a.copy()
        a[3, 1, 2] = 5.0  # layout [z, y, x]
        rep = error_metrics(a, b)
        assert rep.worst_index == (2, 1, 3)
        assert rep.linf_abs == 5.0

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            error_metrics(np.zeros((4, 4, 4)), np.zeros((8, 8, 8)))
