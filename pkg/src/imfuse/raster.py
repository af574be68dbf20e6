"""Grayscale image handling: PGM I/O, quantization, reflected borders, box blur.

Images are plain 2D ``float64`` numpy arrays indexed ``[row, col]``. Nothing in
the pipeline rounds pixels; quantization only happens in :func:`save_image`.
"""

from __future__ import annotations

import numpy as np


class PGMError(ValueError):
    """Base class for PGM parse failures."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class PGMHeaderError(PGMError):
    pass


class PGMTruncatedError(PGMError):
    pass


class PGMMaxvalError(PGMError):
    pass


def as_image(data) -> np.ndarray:
    """Coerce ``data`` to a finite, non-empty 2D float64 array."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"image must be 2D, got shape {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image must be at least 1x1, got {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains NaN or Inf")
    return img


def same_shape(a: np.ndarray, b: np.ndarray, what: str = "images") -> None:
    if a.shape != b.shape:
        raise ValueError(
            f"{what} must have the same size: "
            f"{a.shape[0]}x{a.shape[1]} vs {b.shape[0]}x{b.shape[1]}"
        )


# -- PGM ---------------------------------------------------------------------

_WHITESPACE = b" \t\n\r\v\f"


class _Tokenizer:
    def __init__(self, buf: bytes, pos: int):
        self.buf = buf
        self.pos = pos

    def skip(self) -> None:
        buf = self.buf
        while self.pos < len(buf):
            c = buf[self.pos : self.pos + 1]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == b"#":
                end = buf.find(b"\n", self.pos)
                self.pos = len(buf) if end < 0 else end + 1
            else:
                break

    def integer(self, what: str, error=PGMHeaderError) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.buf) and self.buf[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            if start >= len(self.buf):
                raise error(f"unexpected end of data reading {what}", start)
            raise error(f"expected integer for {what}", start)
        return int(self.buf[start : self.pos])


def load_image(data: bytes) -> np.ndarray:
    """Parse a binary (P5) or ASCII (P2) PGM with maxval <= 255."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMHeaderError(f"bad magic {magic!r}, expected P2 or P5", 0)
    tok = _Tokenizer(data, 2)
    width = tok.integer("width")
    height = tok.integer("height")
    if width < 1 or height < 1:
        raise PGMHeaderError(f"invalid dimensions {width}x{height}", tok.pos)
    tok.skip()
    maxval_at = tok.pos
    maxval = tok.integer("maxval")
    if maxval > 255:
        raise PGMMaxvalError(f"maxval {maxval} exceeds 255", maxval_at)
    if maxval < 1:
        raise PGMHeaderError(f"invalid maxval {maxval}", maxval_at)
    count = width * height

    if magic == b"P5":
        if tok.pos >= len(data) or data[tok.pos : tok.pos + 1] not in _WHITESPACE:
            raise PGMHeaderError("missing whitespace after maxval", tok.pos)
        start = tok.pos + 1
        raw = data[start : start + count]
        if len(raw) < count:
            raise PGMTruncatedError(
                f"expected {count} samples, got {len(raw)}", start + len(raw)
            )
        pixels = np.frombuffer(raw, dtype=np.uint8)
    else:
        values = []
        for _ in range(count):
            values.append(tok.integer("sample", error=PGMTruncatedError))
        pixels = np.array(values, dtype=np.int64)
    if pixels.size and pixels.max() > maxval:
        raise PGMHeaderError(f"sample value above maxval {maxval}", tok.pos)
    return pixels.astype(np.float64).reshape(height, width)


def quantize(img: np.ndarray) -> np.ndarray:
    """Clamp to [0, 255] and round half away from zero."""
    clipped = np.clip(img, 0.0, 255.0)
    return np.floor(clipped + 0.5).astype(np.uint8)


def save_image(img: np.ndarray) -> bytes:
    img = as_image(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + quantize(img).tobytes()


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return load_image(fh.read())


def write_pgm(path, img: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(save_image(img))


# -- borders -----------------------------------------------------------------

def reflect_index(k, n: int):
    """Map index ``k`` into ``[0, n)`` by mirror reflection without edge repeat.

    -1 -> 1, -2 -> 2, n -> n-2. Works on scalars and integer arrays, and
    keeps folding for indices further than one period away.
    """
    if n == 1:
        return np.zeros_like(k) if isinstance(k, np.ndarray) else 0
    period = 2 * (n - 1)
    k = np.mod(k, period)
    out = np.where(k >= n, period - k, k)
    return out if isinstance(out, np.ndarray) and out.ndim else int(out)


def sample_reflected(img: np.ndarray, i: int, j: int) -> float:
    h, w = img.shape
    return float(img[reflect_index(i, h), reflect_index(j, w)])


def pad_reflect(img: np.ndarray, before: int, after: int, axis: int) -> np.ndarray:
    """Pad one axis using the same reflection rule as :func:`reflect_index`."""
    n = img.shape[axis]
    idx = reflect_index(np.arange(-before, n + after), n)
    return np.take(img, idx, axis=axis)


# -- degradation -------------------------------------------------------------

def _box_1d(img: np.ndarray, k: int, axis: int) -> np.ndarray:
    r = k // 2
    padded = pad_reflect(img, r, r, axis)
    n = img.shape[axis]
    acc = np.zeros_like(img)
    for off in range(k):
        acc += np.take(padded, np.arange(off, off + n), axis=axis)
    return acc / k


def box_blur(img: np.ndarray, k: int) -> np.ndarray:
    """Equal-weight k x k mean filter with reflected borders."""
    if not isinstance(k, (int, np.integer)) or k < 1 or k % 2 == 0:
        raise ValueError(f"blur size must be an odd positive integer, got {k!r}")
    img = as_image(img)
    if k == 1:
        return img.copy()
    return _box_1d(_box_1d(img, k, 0), k, 1)
