"""Two-image fusion in the Laplacian-pyramid and Haar-wavelet domains."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import pyramid, wavelet
from .pyramid import DEFAULT_KERNEL, Kernel5
from .raster import as_image, same_shape


class DetailRule(enum.Enum):
    MAX_ABS = "maxabs"
    AVERAGE = "average"


class Method(enum.Enum):
    LAPLACIAN = "laplacian"
    WAVELET = "wavelet"


# The pyramid recipe selects detail by maximum; the wavelet recipe averages.
DEFAULT_RULES = {Method.LAPLACIAN: DetailRule.MAX_ABS, Method.WAVELET: DetailRule.AVERAGE}


@dataclass(frozen=True)
class FusionConfig:
    method: Method = Method.LAPLACIAN
    n_levels: int = 4
    detail_rule: Optional[DetailRule] = None
    kernel: Kernel5 = DEFAULT_KERNEL

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if self.detail_rule is not None:
            object.__setattr__(self, "detail_rule", DetailRule(self.detail_rule))
        if self.n_levels < 1:
            raise ValueError(f"n_levels must be >= 1, got {self.n_levels}")

    @property
    def rule(self) -> DetailRule:
        return self.detail_rule or DEFAULT_RULES[self.method]


def merge_detail(b1, b2, rule: DetailRule) -> np.ndarray:
    """Combine two signed detail bands.

    MAX_ABS keeps whichever coefficient has the larger magnitude, sign
    included; on a tie the first band wins.
    """
    same_shape(b1, b2, "detail bands")
    rule = DetailRule(rule)
    if rule is DetailRule.AVERAGE:
        return (b1 + b2) / 2.0
    return np.where(np.abs(b1) >= np.abs(b2), b1, b2)


def merge_base(a1, a2) -> np.ndarray:
    same_shape(a1, a2, "base bands")
    return (a1 + a2) / 2.0


def _inputs(im1, im2):
    im1, im2 = as_image(im1), as_image(im2)
    same_shape(im1, im2, "source images")
    return im1, im2


def fuse_laplacian(im1, im2, cfg: FusionConfig = FusionConfig()) -> np.ndarray:
    im1, im2 = _inputs(im1, im2)
    p1 = pyramid.laplacian_pyramid(im1, cfg.n_levels, cfg.kernel)
    p2 = pyramid.laplacian_pyramid(im2, cfg.n_levels, cfg.kernel)
    bands = tuple(merge_detail(b1, b2, cfg.rule) for b1, b2 in zip(p1.bands, p2.bands))
    fused = pyramid.LaplacianPyramid(bands, merge_base(p1.base, p2.base), cfg.kernel)
    return pyramid.reconstruct(fused)


def fuse_wavelet(
    im1, im2, cfg: FusionConfig = FusionConfig(method=Method.WAVELET)
) -> np.ndarray:
    """Single-level Haar fusion: LL is always averaged, detail bands use the rule."""
    im1, im2 = _inputs(im1, im2)
    d1, d2 = wavelet.dwt2(im1), wavelet.dwt2(im2)
    rule = cfg.rule
    merged = wavelet.WaveletDecomposition(
        ll=merge_base(d1.ll, d2.ll),
        lh=merge_detail(d1.lh, d2.lh, rule),
        hl=merge_detail(d1.hl, d2.hl, rule),
        hh=merge_detail(d1.hh, d2.hh, rule),
        source_height=d1.source_height,
        source_width=d1.source_width,
    )
    return wavelet.idwt2(merged)


def fuse(im1, im2, cfg: FusionConfig) -> np.ndarray:
    if cfg.method is Method.LAPLACIAN:
        return fuse_laplacian(im1, im2, cfg)
    return fuse_wavelet(im1, im2, cfg)
