"""PGM (P2/P5) reading and writing, and the integer <-> unit-gray mapping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import BadMagic, HeaderParse, MaxvalOutOfRange, SampleOutOfRange, Truncated

PgmFormat = Literal["P2", "P5"]

_WHITESPACE = b" \t\n\r\v\f"
_P2_LINE_LIMIT = 70


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Raster of integer gray samples in ``[0, maxval]``, stored row-major.

    ``samples`` is kept as a read-only ``uint16`` vector of length
    ``width * height``; use :attr:`pixels` for a ``(height, width)`` view and
    :attr:`unit` for levels in ``[0, 1]``.
    """

    width: int
    height: int
    maxval: int
    samples: np.ndarray

    def __post_init__(self):
        if int(self.width) < 1 or int(self.height) < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if not 1 <= int(self.maxval) <= 65535:
            raise MaxvalOutOfRange(f"maxval {self.maxval} outside [1, 65535]")
        raw = np.asarray(self.samples)
        if raw.ndim != 1:
            raw = raw.reshape(-1)
        if raw.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} samples, got {raw.size}"
            )
        if raw.size and (raw.min() < 0 or raw.max() > self.maxval):
            raise SampleOutOfRange(f"sample outside [0, {self.maxval}]")
        arr = raw.astype(np.uint16, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "height", int(self.height))
        object.__setattr__(self, "maxval", int(self.maxval))

    @classmethod
    def from_array(cls, pixels, maxval: int = 255) -> "GrayImage":
        pixels = np.asarray(pixels)
        if pixels.ndim == 1:
            pixels = pixels[np.newaxis, :]
        height, width = pixels.shape
        return cls(width, height, maxval, pixels.reshape(-1))

    @property
    def size(self) -> int:
        return self.width * self.height

    @property
    def pixels(self) -> np.ndarray:
        return self.samples.reshape(self.height, self.width)

    @property
    def unit(self) -> np.ndarray:
        return to_unit(self.samples, self.maxval)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.maxval == other.maxval
            and np.array_equal(self.samples, other.samples)
        )

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height}, maxval={self.maxval})"


def to_unit(sample, maxval: int):
    """Map integer samples to ``[0, 1]`` as the correctly rounded ``sample / maxval``."""
    if np.ndim(sample) == 0:
        return int(sample) / int(maxval)
    return np.asarray(sample, dtype=np.float64) / float(maxval)


def from_unit(value, maxval: int):
    """Round ``value * maxval`` to nearest (ties away from zero), clamped to ``[0, maxval]``."""
    scaled = np.asarray(value, dtype=np.float64) * float(maxval)
    mag = np.abs(scaled)
    whole = np.floor(mag)
    # mag - whole is exact, so the tie test is not perturbed by an added 0.5
    rounded = np.copysign(whole + (mag - whole >= 0.5), scaled)
    out = np.clip(np.nan_to_num(rounded, nan=0.0), 0, maxval).astype(np.int64)
    if out.ndim == 0:
        return int(out)
    return out


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in _WHITESPACE and ch:
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _parse_header(data: bytes) -> tuple[str, int, int, int, int]:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise BadMagic(f"unsupported magic {magic!r}; expected P2 or P5")
    if len(data) > 2 and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise BadMagic(f"unsupported magic {data[:3]!r}")
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        token, pos = _next_token(data, pos)
        if not token:
            raise HeaderParse(f"missing {name}")
        if not token.isdigit():
            raise HeaderParse(f"non-numeric {name}: {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise HeaderParse(f"image dimensions must be positive, got {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise MaxvalOutOfRange(f"maxval {maxval} outside [1, 65535]")
    return magic.decode("ascii"), width, height, maxval, pos


def read_pgm(data: bytes) -> GrayImage:
    """Parse a P2 or P5 graymap.

    Comments may appear anywhere in the header. Exactly one whitespace byte
    separates the maxval from a P5 payload; payloads with ``maxval > 255``
    are big-endian 16-bit.
    """
    data = bytes(data)
    magic, width, height, maxval, pos = _parse_header(data)
    count = width * height

    if magic == "P5":
        if pos >= len(data):
            raise Truncated("no sample data after header")
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        payload = data[pos : pos + need]
        if len(payload) < need:
            raise Truncated(f"expected {need} payload bytes, found {len(payload)}")
        samples = np.frombuffer(payload, dtype=dtype).astype(np.int64)
    else:
        tokens = []
        while len(tokens) < count:
            token, pos = _next_token(data, pos)
            if not token:
                raise Truncated(f"expected {count} samples, found {len(tokens)}")
            if not token.isdigit():
                raise HeaderParse(f"non-numeric sample {token!r}")
            tokens.append(int(token))
        samples = np.array(tokens, dtype=np.int64)

    if samples.size and samples.max() > maxval:
        raise SampleOutOfRange(f"sample {samples.max()} exceeds maxval {maxval}")
    return GrayImage(width, height, maxval, samples)


def write_pgm(img: GrayImage, format: PgmFormat = "P5") -> bytes:
    fmt = format.upper()
    if fmt not in ("P2", "P5"):
        raise ValueError(f"unknown PGM format {format!r}")
    header = f"{fmt}\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    if fmt == "P5":
        dtype = ">u2" if img.maxval > 255 else "u1"
        return header + img.samples.astype(dtype).tobytes()

    lines = []
    line = ""
    for value in img.samples.tolist():
        token = str(value)
        if not line:
            line = token
        elif len(line) + 1 + len(token) <= _P2_LINE_LIMIT:
            line += " " + token
        else:
            lines.append(line)
            line = token
    lines.append(line)
    return header + ("\n".join(lines) + "\n").encode("ascii")


def sniff_format(data: bytes) -> PgmFormat:
    magic = bytes(data[:2])
    if magic not in (b"P2", b"P5"):
        raise BadMagic(f"unsupported magic {magic!r}; expected P2 or P5")
    return magic.decode("ascii")


def load(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save(path, img: GrayImage, format: PgmFormat = "P5") -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img, format))
