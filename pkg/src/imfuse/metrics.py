"""Full-reference quality metrics: MSE, NAE and PSNR."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import as_image, same_shape


def _pair(ref, test):
    ref, test = as_image(ref), as_image(test)
    same_shape(ref, test)
    return ref, test


def mse(ref, test) -> float:
    ref, test = _pair(ref, test)
    return float(np.mean((ref - test) ** 2))


def nae(ref, test) -> float:
    """Sum of absolute errors normalized by the reference's absolute sum."""
    ref, test = _pair(ref, test)
    denom = float(np.sum(np.abs(ref)))
    if denom == 0.0:
        raise ZeroDivisionError("NAE undefined for an all-zero reference image")
    return float(np.sum(np.abs(ref - test))) / denom


def psnr_from_mse(err: float, peak: float = 255.0) -> float:
    if peak <= 0:
        raise ValueError(f"peak must be positive, got {peak}")
    if err == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / err)


def psnr(ref, test, peak: float = 255.0) -> float:
    """PSNR in dB; ``math.inf`` for identical images."""
    return psnr_from_mse(mse(ref, test), peak)


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    nae: float
    psnr: float

    @classmethod
    def compute(cls, ref, test, peak: float = 255.0) -> "MetricsReport":
        err = mse(ref, test)
        return cls(err, nae(ref, test), psnr_from_mse(err, peak))

    def csv_fields(self) -> list:
        return [f"{self.mse:.4f}", f"{self.nae:.4f}", _fmt(self.psnr)]


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.4f}"
