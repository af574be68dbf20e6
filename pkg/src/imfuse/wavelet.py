"""Single-level 2D orthonormal Haar (db1) transform.

Filtering is applied along rows first (horizontal), then along columns.
Subband names give the row filter first: ``lh`` is low-pass along rows and
high-pass along columns, so for a 2x2 block ``[[a, b], [c, d]]``::

    ll = (a + b + c + d) / 2      lh = (a + b - c - d) / 2
    hl = (a - b + c - d) / 2      hh = (a - b - c + d) / 2

An odd axis is extended by one mirrored sample (``x[n-2]``) before analysis
and cropped off again after synthesis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_image, pad_reflect

_S = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class WaveletDecomposition:
    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray
    source_height: int
    source_width: int

    @property
    def subbands(self) -> dict:
        return {"ll": self.ll, "lh": self.lh, "hl": self.hl, "hh": self.hh}

    def validate(self) -> None:
        expected = ((self.source_height + 1) // 2, (self.source_width + 1) // 2)
        for name, band in self.subbands.items():
            if band.shape != expected:
                raise ValueError(
                    f"subband {name} has shape {band.shape}, expected {expected} "
                    f"for a {self.source_height}x{self.source_width} source"
                )


def _analyze(x: np.ndarray, axis: int):
    if x.shape[axis] % 2:
        x = pad_reflect(x, 0, 1, axis)
    even = np.take(x, np.arange(0, x.shape[axis], 2), axis=axis)
    odd = np.take(x, np.arange(1, x.shape[axis], 2), axis=axis)
    return (even + odd) * _S, (even - odd) * _S


def _synthesize(low: np.ndarray, high: np.ndarray, axis: int) -> np.ndarray:
    even = (low + high) * _S
    odd = (low - high) * _S
    stacked = np.stack([even, odd], axis=axis + 1)
    shape = list(low.shape)
    shape[axis] *= 2
    return stacked.reshape(shape)


def dwt2(img: np.ndarray) -> WaveletDecomposition:
    img = as_image(img)
    h, w = img.shape
    if h < 2 or w < 2:
        raise ValueError(f"dwt2 needs both axes >= 2, got {h}x{w}")
    lo, hi = _analyze(img, 1)
    ll, lh = _analyze(lo, 0)
    hl, hh = _analyze(hi, 0)
    return WaveletDecomposition(ll, lh, hl, hh, h, w)


def idwt2(dec: WaveletDecomposition) -> np.ndarray:
    dec.validate()
    lo = _synthesize(dec.ll, dec.lh, 0)
    hi = _synthesize(dec.hl, dec.hh, 0)
    out = _synthesize(lo, hi, 1)
    return out[: dec.source_height, : dec.source_width]
