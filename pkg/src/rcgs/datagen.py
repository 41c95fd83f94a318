"""Deterministic synthetic corpora: quantized Gaussian noise, a sticky Markov
byte process and quantized 8x8 DCT coefficients of a grayscale image.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(seed)``; only its raw 64-bit outputs are used, so streams do
not depend on numpy's distribution samplers.  A raw word ``r`` maps to a
uniform double as ``(r >> 11) * 2**-53``.  Gaussian samples use the
Box-Muller transform on consecutive raw pairs, consuming both outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
import math

import numpy as np

KINDS = ("gaussian", "markov", "dct")
BLOCK = 8
_TWO_POW_M53 = 2.0 ** -53


@dataclass(frozen=True)
class GenSpec:
    kind: str
    length: int | None = 262144
    seed: int = 1
    sigma_sq: float = 25.0
    qs: float = 1.0
    p_stay: float = 0.99
    source_image: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.length is not None and self.length <= 0:
            raise ValueError("length must be positive")
        if self.kind != "dct" and self.length is None:
            raise ValueError(f"{self.kind} generator needs an explicit length")
        if self.qs <= 0:
            raise ValueError("quantization step must be positive")

    @classmethod
    def parse(cls, text: str) -> GenSpec:
        """Parse ``kind,key=value,...`` (e.g. ``gaussian,sigma_sq=25,seed=3``)."""
        kind, *pairs = [part.strip() for part in text.split(",") if part.strip()]
        fields = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep:
                raise ValueError(f"expected key=value, got {pair!r}")
            key = {"sigma2": "sigma_sq", "image": "source_image"}.get(key, key)
            if key in ("length", "seed"):
                fields[key] = int(value)
            elif key in ("sigma_sq", "qs", "p_stay"):
                fields[key] = float(value)
            elif key == "source_image":
                fields[key] = value
            else:
                raise ValueError(f"unknown generator field {key!r}")
        return cls(kind, **fields)


def _raw_words(seed: int, n: int) -> np.ndarray:
    return np.random.PCG64(seed).random_raw(n)


def _unit_doubles(raw: np.ndarray) -> np.ndarray:
    return (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_M53


def quantize(values: np.ndarray, qs: float) -> np.ndarray:
    """Round half away from zero on ``values / qs``, clamp to int8 and offset by 128."""
    scaled = values / qs
    q = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    return (np.clip(q, -128, 127) + 128).astype(np.uint8)


def standard_normal(seed: int, n: int) -> np.ndarray:
    pairs = (n + 1) >> 1
    raw = _raw_words(seed, pairs << 1)
    u1 = 1.0 - _unit_doubles(raw[0::2])  # (0, 1], keeps log finite
    u2 = _unit_doubles(raw[1::2])
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * math.pi * u2
    z = np.empty(pairs << 1)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:n]


def gen_gaussian_quantized(spec: GenSpec) -> bytes:
    if spec.sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    x = math.sqrt(spec.sigma_sq) * standard_normal(spec.seed, spec.length)
    return quantize(x, spec.qs).tobytes()


def gen_markov_correlated(spec: GenSpec) -> bytes:
    """Repeat the previous byte with probability ``p_stay``, else draw a uniform byte."""
    if not 0.0 < spec.p_stay < 1.0:
        raise ValueError("p_stay must lie in (0, 1)")
    n = spec.length
    raw = _raw_words(spec.seed, n << 1)
    stay = _unit_doubles(raw[0::2]) < spec.p_stay
    stay[0] = False
    fresh = (raw[1::2] >> np.uint64(56)).astype(np.uint8)
    # index of the most recent fresh draw at or before each position
    source = np.where(stay, 0, np.arange(n))
    np.maximum.accumulate(source, out=source)
    return fresh[source].tobytes()


def read_pgm(path) -> np.ndarray:
    """Read an 8-bit binary PGM (P5) image as a 2-D uint8 array."""
    data = Path(path).read_bytes()
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ValueError(f"{path}: truncated PGM header")
        tokens.append(data[start:pos])
    if tokens[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM (P5) image")
    width, height, maxval = (int(t) for t in tokens[1:])
    if maxval > 255:
        raise ValueError(f"{path}: only 8-bit PGM images are supported")
    pos += 1  # single whitespace byte after maxval
    pixels = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    return pixels.reshape(height, width)


def write_pgm(path, image: np.ndarray) -> None:
    image = np.asarray(image, dtype=np.uint8)
    height, width = image.shape
    Path(path).write_bytes(b"P5\n%d %d\n255\n" % (width, height) + image.tobytes())


def dct_matrix(n: int = BLOCK) -> np.ndarray:
    """Orthonormal DCT-II basis; rows are frequencies."""
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    basis = np.cos(math.pi * (2 * i + 1) * k / (2 * n)) * math.sqrt(2.0 / n)
    basis[0] /= math.sqrt(2.0)
    return basis


def block_dct(image: np.ndarray) -> np.ndarray:
    """DCT of every 8x8 block of ``image - 128``; shape (n_blocks, 8, 8), raster block order."""
    h = image.shape[0] - image.shape[0] % BLOCK
    w = image.shape[1] - image.shape[1] % BLOCK
    pixels = image[:h, :w].astype(np.float64) - 128.0
    blocks = pixels.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).swapaxes(1, 2)
    blocks = blocks.reshape(-1, BLOCK, BLOCK)
    c = dct_matrix()
    return c @ blocks @ c.T


def inverse_block_dct(coeffs: np.ndarray) -> np.ndarray:
    c = dct_matrix()
    return c.T @ coeffs @ c


def gen_dct_blocks(spec: GenSpec) -> bytes:
    """Quantized block DCT coefficients, 64 bytes per block in row-major order.

    The output holds ``length // 64`` blocks (all blocks when ``length`` is None).
    """
    if spec.source_image is None:
        raise ValueError("dct generator needs a source image")
    image = read_pgm(spec.source_image)
    coeffs = quantize(block_dct(image), spec.qs).reshape(-1)
    if spec.length is None:
        return coeffs.tobytes()
    n = spec.length - spec.length % (BLOCK * BLOCK)
    if n > coeffs.size:
        raise ValueError(
            f"image yields {coeffs.size} coefficient bytes, {n} requested"
        )
    return coeffs[:n].tobytes()


def generate(spec: GenSpec) -> bytes:
    return {
        "gaussian": gen_gaussian_quantized,
        "markov": gen_markov_correlated,
        "dct": gen_dct_blocks,
    }[spec.kind](spec)
