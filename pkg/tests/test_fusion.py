from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imfuse import metrics, raster
from imfuse.fusion import (
    DetailRule,
    FusionConfig,
    Method,
    fuse,
    fuse_laplacian,
    fuse_wavelet,
    merge_base,
    merge_detail,
)

import oracles

RULES = list(DetailRule)
DATA = Path(__file__).parent / "data"


def rand(shape, seed):
    return np.random.default_rng(seed).uniform(0, 255, shape)


class TestMerge:
    @pytest.mark.parametrize("rule", RULES)
    def test_idempotent(self, rule):
        b = rand((4, 5), 0) - 128
        np.testing.assert_array_equal(merge_detail(b, b, rule), b)

    def test_maxabs_keeps_sign(self):
        out = merge_detail(np.array([[-5.0]]), np.array([[3.0]]), DetailRule.MAX_ABS)
        assert out[0, 0] == -5.0

    def test_average(self):
        out = merge_detail(np.array([[-5.0]]), np.array([[3.0]]), DetailRule.AVERAGE)
        assert out[0, 0] == -1.0

    def test_maxabs_tie_prefers_first(self):
        b1, b2 = np.array([[4.0, -2.0]]), np.array([[-4.0, 2.0]])
        np.testing.assert_array_equal(merge_detail(b1, b2, DetailRule.MAX_ABS), b1)
        np.testing.assert_array_equal(merge_detail(b2, b1, DetailRule.MAX_ABS), b2)

    def test_rule_from_string(self):
        out = merge_detail(np.array([[1.0]]), np.array([[3.0]]), "average")
        assert out[0, 0] == 2.0

    def test_base(self):
        assert merge_base(np.array([[100.0]]), np.array([[200.0]]))[0, 0] == 150.0
        x, y = rand((3, 3), 1), rand((3, 3), 2)
        np.testing.assert_array_equal(merge_base(x, x), x)
        np.testing.assert_allclose(merge_base(3 * x, 3 * y), 3 * merge_base(x, y), rtol=1e-14)

    @pytest.mark.parametrize("fn", [merge_base, lambda a, b: merge_detail(a, b, DetailRule.MAX_ABS)])
    def test_shape_mismatch(self, fn):
        with pytest.raises(ValueError, match="same size"):
            fn(np.zeros((2, 2)), np.zeros((2, 3)))

    @given(st.integers(0, 2**32 - 1), st.sampled_from(RULES))
    def test_merged_value_comes_from_allowed_set(self, seed, rule):
        rng = np.random.default_rng(seed)
        b1, b2 = rng.normal(size=(2, 6, 6))
        out = merge_detail(b1, b2, rule)
        if rule is DetailRule.AVERAGE:
            np.testing.assert_array_equal(out, (b1 + b2) / 2)
        else:
            assert np.all((out == b1) | (out == b2))


class TestConfig:
    def test_default_rules(self):
        assert FusionConfig(Method.LAPLACIAN).rule is DetailRule.MAX_ABS
        assert FusionConfig(Method.WAVELET).rule is DetailRule.AVERAGE
        assert FusionConfig("wavelet", detail_rule="maxabs").rule is DetailRule.MAX_ABS

    def test_defaults(self):
        cfg = FusionConfig()
        assert cfg.method is Method.LAPLACIAN and cfg.n_levels == 4

    def test_bad_levels(self):
        with pytest.raises(ValueError):
            FusionConfig(n_levels=0)


class TestLaplacian:
    @pytest.mark.parametrize("rule", RULES)
    @pytest.mark.parametrize("levels", [1, 3, 5])
    def test_self_fusion(self, rule, levels):
        x = rand((40, 33), 3)
        out = fuse_laplacian(x, x, FusionConfig(n_levels=levels, detail_rule=rule))
        np.testing.assert_allclose(out, x, atol=1e-9)

    def test_table1_recipe(self):
        im1, im2 = rand((64, 64), 4), rand((64, 64), 5)
        out = fuse_laplacian(im1, im2, FusionConfig(n_levels=1))
        np.testing.assert_allclose(out, oracles.table1_fusion(im1, im2), atol=1e-9)

    def test_table1_recipe_odd_shape(self):
        im1, im2 = rand((13, 10), 6), rand((13, 10), 7)
        out = fuse_laplacian(im1, im2, FusionConfig(n_levels=1))
        np.testing.assert_allclose(out, oracles.table1_fusion(im1, im2), atol=1e-9)

    def test_average_rule_is_commutative(self):
        x, y = rand((32, 32), 8), rand((32, 32), 9)
        cfg = FusionConfig(detail_rule=DetailRule.AVERAGE)
        np.testing.assert_array_equal(fuse_laplacian(x, y, cfg), fuse_laplacian(y, x, cfg))

    def test_maxabs_commutative_without_ties(self):
        x, y = rand((32, 32), 10), rand((32, 32), 11)
        np.testing.assert_allclose(fuse_laplacian(x, y), fuse_laplacian(y, x), atol=1e-12)

    def test_complementary_blur_improves_psnr(self):
        src = np.asarray(raster.read_pgm(DATA / "camera.pgm"))
        blurred = raster.box_blur(src, 5)
        left, right = src.copy(), src.copy()
        left[:, :128] = blurred[:, :128]
        right[:, 128:] = blurred[:, 128:]
        fused = fuse_laplacian(left, right)
        p = metrics.psnr(src, fused)
        assert p > metrics.psnr(src, left)
        assert p > metrics.psnr(src, right)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="same size"):
            fuse_laplacian(np.zeros((8, 8)), np.zeros((8, 9)))

    def test_too_deep(self):
        with pytest.raises(ValueError, match="max feasible depth"):
            fuse_laplacian(np.zeros((8, 8)), np.zeros((8, 8)), FusionConfig(n_levels=4))


class TestWavelet:
    @pytest.mark.parametrize("rule", RULES)
    @pytest.mark.parametrize("shape", [(16, 16), (15, 20), (3, 2)])
    def test_self_fusion(self, rule, shape):
        x = rand(shape, 12)
        out = fuse_wavelet(x, x, FusionConfig(Method.WAVELET, detail_rule=rule))
        np.testing.assert_allclose(out, x, atol=1e-9)

    def test_average_equals_pixel_mean(self):
        x, y = rand((24, 30), 13), rand((24, 30), 14)
        out = fuse_wavelet(x, y, FusionConfig(Method.WAVELET, detail_rule=DetailRule.AVERAGE))
        np.testing.assert_allclose(out, (x + y) / 2, atol=1e-9)

    def test_constants(self):
        out = fuse_wavelet(np.full((6, 6), 50.0), np.full((6, 6), 150.0))
        np.testing.assert_allclose(out, 100.0, atol=1e-9)

    def test_maxabs_keeps_ll_mean(self):
        x, y = rand((8, 8), 15), rand((8, 8), 16)
        out = fuse_wavelet(x, y, FusionConfig(Method.WAVELET, detail_rule=DetailRule.MAX_ABS))
        # block means come from LL only, so they must match the pixel-average's
        blocks = lambda a: a.reshape(4, 2, 4, 2).mean(axis=(1, 3))
        np.testing.assert_allclose(blocks(out), blocks((x + y) / 2), atol=1e-9)

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="same size"):
            fuse_wavelet(np.zeros((8, 8)), np.zeros((9, 8)))


def test_dispatch():
    x, y = rand((16, 16), 17), rand((16, 16), 18)
    np.testing.assert_array_equal(fuse(x, y, FusionConfig(Method.WAVELET)), fuse_wavelet(x, y))
    np.testing.assert_array_equal(
        fuse(x, y, FusionConfig(Method.LAPLACIAN, n_levels=2)),
        fuse_laplacian(x, y, FusionConfig(n_levels=2)),
    )


def test_deterministic():
    x, y = rand((64, 64), 19), rand((64, 64), 20)
    a = fuse_laplacian(x, y)
    b = fuse_laplacian(x, y)
    assert a.tobytes() == b.tobytes()

