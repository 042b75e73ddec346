"""Binary PGM (P5) reading and writing, 8-bit only."""

from __future__ import annotations

import os

import numpy as np

from ..errors import FormatError


def _tokens(data: bytes, count: int):
    # Header fields are whitespace-separated; '#' starts a comment to end of line.
    out, i, n = [], 0, len(data)
    while len(out) < count:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i >= n:
            raise FormatError("truncated header")
        if data[i:i + 1] == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        out.append(data[i:j])
        i = j
    # exactly one whitespace byte separates header and raster
    if i >= n or not data[i:i + 1].isspace():
        raise FormatError("missing whitespace after header")
    return out, i + 1


def pgm_decode(data: bytes) -> np.ndarray:
    if data[:2] != b"P5":
        raise FormatError(f"not a binary PGM (magic {data[:2]!r})")
    (magic, w, h, maxval), start = _tokens(data, 4)
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise FormatError("non-integer header field") from exc
    if width <= 0 or height <= 0:
        raise FormatError("nonpositive image size")
    if not 0 < maxval < 256:
        raise FormatError(f"only 8-bit PGM supported (maxval {maxval})")
    raster = data[start:start + width * height]
    if len(raster) < width * height:
        raise FormatError("truncated pixel data")
    pix = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return pix.astype(float) / maxval


def pgm_encode(img) -> bytes:
    a = np.asarray(img, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D image")
    q = np.rint(np.clip(a, 0.0, 1.0) * 255.0).astype(np.uint8)
    header = f"P5\n{a.shape[1]} {a.shape[0]}\n255\n".encode("ascii")
    return header + q.tobytes()


def pgm_read(path: str | os.PathLike) -> np.ndarray:
    """Read a P5 file; pixels are returned normalized to [0, 1]."""
    with open(path, "rb") as fh:
        return pgm_decode(fh.read())


def pgm_write(img, path: str | os.PathLike) -> None:
    """Write ``img`` clamped to [0, 1] and quantized to 8 bits."""
    with open(path, "wb") as fh:
        fh.write(pgm_encode(img))
