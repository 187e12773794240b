import numpy as np
import pytest

from ft3d import ConfigurationError, TileConfig
from ft3d.layout import default_tile_config, transpose2d, transpose3d_zx, transpose_planes


def random_cube(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n, n)) + 1j * rng.standard_normal((n, n, n))


def random_plane(n, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


class TestTileConfig:
    def test_defaults(self):
        cfg = TileConfig()
        assert cfg.tile == 8 and cfg.buffers == 2

    def test_rejects_single_buffer(self):
        with pytest.raises(ConfigurationError):
            TileConfig(tile=8, buffers=1)

    def test_rejects_zero_tile(self):
        with pytest.raises(ConfigurationError):
            TileConfig(tile=0)

    def test_default_config_shrinks_tile_for_small_grids(self):
        assert default_tile_config(4).tile == 4
        assert default_tile_config(64).tile == 8


class TestTranspose2d:
    def test_two_by_two_by_definition(self):
        a, b, c, d = 1 + 1j, 2.0, 3 - 4j, 5j
        plane = np.array([[a, b], [c, d]])
        want = np.array([[a, c], [b, d]])
        got = transpose2d(plane, TileConfig(tile=2))
        np.testing.assert_array_equal(got, want)

    def test_symmetric_plane_is_fixed_point(self):
        p = random_plane(16, seed=0)
        sym = p + p.T
        np.testing.assert_array_equal(transpose2d(sym), sym)

    def test_matches_plain_transpose(self):
        p = random_plane(32, seed=1)
        np.testing.assert_array_equal(transpose2d(p), p.T)

    @pytest.mark.parametrize("tile", [4, 8, 16])
    @pytest.mark.parametrize("buffers", [2, 3])
    def test_involution_bitwise(self, tile, buffers):
        cfg = TileConfig(tile=tile, buffers=buffers)
        p = random_plane(32, seed=tile * buffers)
        np.testing.assert_array_equal(transpose2d(transpose2d(p, cfg), cfg), p)

    def test_values_independent_of_config(self):
        p = random_plane(48, seed=3)
        base = transpose2d(p, TileConfig(tile=48))
        for tile in (4, 8, 16):
            for buffers in (2, 3, 5):
                got = transpose2d(p, TileConfig(tile=tile, buffers=buffers))
                np.testing.assert_array_equal(got, base)

    def test_tile_must_divide_n(self):
        with pytest.raises(ConfigurationError):
            transpose2d(random_plane(16, 0), TileConfig(tile=5))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            transpose2d(np.ones((4, 8)))

    def test_preserves_element_multiset(self):
        p = random_plane(16, seed=4)
        got = transpose2d(p)
        assert sorted(got.ravel(), key=lambda z: (z.real, z.imag)) == sorted(
            p.ravel(), key=lambda z: (z.real, z.imag)
        )


class TestTransposePlanes:
    def test_every_plane_transposed(self):
        t = random_cube(16, seed=5)
        got = transpose_planes(t, TileConfig(tile=4))
        for z in range(16):
            np.testing.assert_array_equal(got[z], t[z].T)

    def test_values_independent_of_config(self):
        t = random_cube(16, seed=6)
        base = transpose_planes(t, TileConfig(tile=16))
        for tile in (2, 4, 8):
            for buffers in (2, 3):
                np.testing.assert_array_equal(
                    transpose_planes(t, TileConfig(tile=tile, buffers=buffers)), base
                )


class TestTranspose3d:
    def test_constant_tensor_fixed(self):
        t = np.full((8, 8, 8), 2.5 - 1j)
        np.testing.assert_array_equal(transpose3d_zx(t), t)

    def test_n2_element_mapping_enumerated(self):
        # value encodes the (x, y, z) position; array layout is [z, y, x]
        n = 2
        t = np.empty((n, n, n), dtype=complex)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    t[z, y, x] = x + 2 * y + 4 * z
        got = transpose3d_zx(t)
        # the element at (x, y, z) moves to (z, x, y): old z is the new
        # fastest coordinate
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    assert got[y, x, z] == t[z, y, x]

    def test_order_three_bitwise(self):
        t = random_cube(8, seed=7)
        once = transpose3d_zx(t)
        thrice = transpose3d_zx(transpose3d_zx(once))
        assert not np.array_equal(once, t)
        np.testing.assert_array_equal(thrice, t)

    def test_z_becomes_fastest_axis(self):
        t = random_cube(4, seed=8)
        got = transpose3d_zx(t)
        # walking the output's last (fastest) axis walks the input's z axis
        np.testing.assert_array_equal(got[0, 0, :], t[:, 0, 0])

    def test_preserves_element_multiset(self):
        t = random_cube(8, seed=9)
        got = transpose3d_zx(t)
        assert np.array_equal(np.sort_complex(got.ravel()), np.sort_complex(t.ravel()))
