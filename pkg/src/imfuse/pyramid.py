"""Gaussian and Laplacian pyramids built from a 5-tap separable generating kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import as_image, pad_reflect


@dataclass(frozen=True)
class Kernel5:
    """Symmetric 5-tap kernel ``w(-2..2)``; the 2D weight is ``w(m) * w(n)``.

    The even taps and the odd taps must each sum to 1/2 so that EXPAND,
    which only picks up one parity class per output sample, keeps
    constants constant.
    """

    taps: tuple = (0.05, 0.25, 0.4, 0.25, 0.05)

    def __post_init__(self):
        taps = tuple(float(t) for t in self.taps)
        object.__setattr__(self, "taps", taps)
        if len(taps) != 5:
            raise ValueError(f"kernel needs 5 taps, got {len(taps)}")
        if taps[0] != taps[4] or taps[1] != taps[3]:
            raise ValueError(f"kernel must be symmetric: {taps}")
        if not math.isclose(taps[0] + taps[2] + taps[4], 0.5, abs_tol=1e-12):
            raise ValueError("even taps w(-2)+w(0)+w(2) must sum to 1/2")
        if not math.isclose(taps[1] + taps[3], 0.5, abs_tol=1e-12):
            raise ValueError("odd taps w(-1)+w(1) must sum to 1/2")

    @classmethod
    def from_a(cls, a: float) -> "Kernel5":
        """Classical one-parameter family ``[1/4 - a/2, 1/4, a, 1/4, 1/4 - a/2]``."""
        return cls((0.25 - a / 2, 0.25, a, 0.25, 0.25 - a / 2))

    def w(self, m: int) -> float:
        return self.taps[m + 2]


DEFAULT_KERNEL = Kernel5()


def _half(n: int) -> int:
    return (n + 1) // 2


def _reduce_axis(x: np.ndarray, w: tuple, axis: int) -> np.ndarray:
    n = x.shape[axis]
    out_n = _half(n)
    padded = pad_reflect(x, 2, 2, axis)
    # padded[p] holds x[p - 2]; output i reads x[2i + m] = padded[2i + m + 2]
    acc = None
    for m in range(-2, 3):
        idx = np.arange(out_n) * 2 + m + 2
        term = w[m + 2] * np.take(padded, idx, axis=axis)
        acc = term if acc is None else acc + term
    return acc


def _expand_axis(x: np.ndarray, w: tuple, target: int, axis: int) -> np.ndarray:
    n = x.shape[axis]
    if target not in (2 * n, 2 * n - 1):
        raise ValueError(
            f"expand target {target} incompatible with source size {n}; "
            f"expected {2 * n - 1} or {2 * n}"
        )
    padded = pad_reflect(x, 1, 1, axis)
    # padded[q] holds x[q - 1]
    i = np.arange(target)
    acc = np.zeros(x.shape[:axis] + (target,) + x.shape[axis + 1 :])
    for m in range(-2, 3):
        src2 = i - m
        even = src2 % 2 == 0
        src = np.where(even, src2 // 2, 0) + 1
        term = np.take(padded, src, axis=axis)
        shape = [1] * x.ndim
        shape[axis] = target
        acc = acc + (2.0 * w[m + 2]) * term * even.reshape(shape)
    return acc


def reduce(img: np.ndarray, kernel: Kernel5 = DEFAULT_KERNEL) -> np.ndarray:
    """One DECREASE step: separable 5x5 low-pass, then keep even samples.

    Output shape is ``ceil(h/2) x ceil(w/2)``. A 1-pixel axis passes through.
    """
    img = as_image(img)
    w = kernel.taps
    return _reduce_axis(_reduce_axis(img, w, 0), w, 1)


def expand(
    img: np.ndarray, target_height: int, target_width: int, kernel: Kernel5 = DEFAULT_KERNEL
) -> np.ndarray:
    """One INCREASE step to an explicit target shape.

    ``out(i, j) = 4 * sum w(m) w(n) img((i - m)/2, (j - n)/2)`` over the taps
    where both source indices are integers. Each target axis must be
    ``2n`` or ``2n - 1`` for a source axis of length ``n``.
    """
    img = as_image(img)
    w = kernel.taps
    out = _expand_axis(img, w, target_height, 0)
    return _expand_axis(out, w, target_width, 1)


def max_depth(height: int, width: int) -> int:
    """Number of REDUCE steps possible while both axes stay at least 2."""
    depth = 0
    while min(height, width) >= 2:
        height, width = _half(height), _half(width)
        depth += 1
    return depth


def _check_depth(shape, n_levels: int) -> None:
    if not isinstance(n_levels, (int, np.integer)) or n_levels < 1:
        raise ValueError(f"n_levels must be a positive integer, got {n_levels!r}")
    deepest = max_depth(*shape)
    if n_levels > deepest:
        raise ValueError(
            f"n_levels={n_levels} too deep for a {shape[0]}x{shape[1]} image; "
            f"max feasible depth is {deepest}"
        )


@dataclass(frozen=True)
class GaussianPyramid:
    levels: tuple
    kernel: Kernel5 = DEFAULT_KERNEL

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class LaplacianPyramid:
    """Signed detail bands ``B_0..B_{N-1}`` plus the coarsest Gaussian level."""

    bands: tuple
    base: np.ndarray
    kernel: Kernel5 = DEFAULT_KERNEL

    @property
    def depth(self) -> int:
        return len(self.bands)

    def validate(self) -> None:
        if not self.bands:
            raise ValueError("Laplacian pyramid needs at least one band")
        shapes = [b.shape for b in self.bands] + [self.base.shape]
        for fine, coarse in zip(shapes, shapes[1:]):
            if coarse != (_half(fine[0]), _half(fine[1])):
                raise ValueError(
                    f"pyramid level shapes inconsistent: {fine} cannot reduce to {coarse}"
                )


def gaussian_pyramid(
    img: np.ndarray, n_levels: int, kernel: Kernel5 = DEFAULT_KERNEL
) -> GaussianPyramid:
    img = as_image(img)
    _check_depth(img.shape, n_levels)
    levels = [img]
    for _ in range(n_levels):
        levels.append(reduce(levels[-1], kernel))
    return GaussianPyramid(tuple(levels), kernel)


def laplacian_pyramid(
    img: np.ndarray, n_levels: int, kernel: Kernel5 = DEFAULT_KERNEL
) -> LaplacianPyramid:
    gp = gaussian_pyramid(img, n_levels, kernel)
    bands = tuple(
        fine - expand(coarse, *fine.shape, kernel=kernel)
        for fine, coarse in zip(gp.levels, gp.levels[1:])
    )
    return LaplacianPyramid(bands, gp.levels[-1], kernel)


def reconstruct(pyr: LaplacianPyramid) -> np.ndarray:
    """Collapse a Laplacian pyramid: expand from the base and add each band."""
    pyr.validate()
    out = pyr.base
    for band in reversed(pyr.bands):
        out = band + expand(out, *band.shape, kernel=pyr.kernel)
    return out
