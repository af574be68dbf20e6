"""Regenerate tests/data/*.pgm from scikit-image's bundled sample images.

Each 512x512 sample is 2x2 block-averaged to 256x256 and rounded.
Only needed if the fixtures are lost; scikit-image is not a runtime dependency.
"""

from pathlib import Path

import numpy as np
from skimage import data

from imfuse.raster import write_pgm

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def halve(a):
    a = a.astype(np.float64)
    return (a[0::2, 0::2] + a[1::2, 0::2] + a[0::2, 1::2] + a[1::2, 1::2]) / 4


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name in ("camera", "moon"):
        write_pgm(OUT / f"{name}.pgm", halve(getattr(data, name)()))
