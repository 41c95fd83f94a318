"""Recursive super-letter coder and its container format.

Each level splits the current byte stream into a stream of 4-bit
super-letter indices and a packed stream of suffix indices.  Because a
level has at most 16 super-letters, two indices fit into one byte, so the
super-letter stream is paired into a byte stream of half the length and
coded again by the next level.  Recursion stops once the stream is short,
and the residue is stored verbatim.

Container layout (all counts are uvarints)::

    "RCGS" | version (1 byte) | original_length | level_count
    per level:
        n_super_letters (1 byte)
        per super-letter: suffix_bits (1 byte) | 2**suffix_bits member bytes
        stream_length
        suffix_bit_count | suffix bytes (MSB-first, zero padded)
    terminal_length | terminal bytes
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitio import pack_varwidth, read_uvarint, unpack_varwidth, write_uvarint
from .errors import BitstreamExhausted, ContainerError
from .grouping import (
    DEFAULT_MAX_RETRIES,
    DEFAULT_T_DELTA,
    DEFAULT_T_DELTA_STEP,
    MAX_SUPER_LETTERS,
    GroupingTable,
    form_super_letters,
)
from .model import as_uint8, count_frequencies

MAGIC = b"RCGS"
VERSION = 1
# a 2**64-byte input halves to one byte in 64 levels
MAX_CONTAINER_LEVELS = 64


@dataclass(frozen=True)
class EncoderConfig:
    t_delta: float = DEFAULT_T_DELTA
    t_delta_step: float = DEFAULT_T_DELTA_STEP
    max_retries: int = DEFAULT_MAX_RETRIES
    raw_threshold: int = 64
    max_levels: int = 40

    def __post_init__(self) -> None:
        if not 0.0 < self.t_delta < 1.0:
            raise ValueError(f"t_delta must lie in (0, 1), got {self.t_delta}")
        if self.raw_threshold < 1:
            raise ValueError("raw_threshold must be at least 1")
        if not 0 <= self.max_levels <= MAX_CONTAINER_LEVELS:
            raise ValueError(f"max_levels must lie in [0, {MAX_CONTAINER_LEVELS}]")


@dataclass(frozen=True)
class LevelHeader:
    # (suffix_bits, members) per super-letter, in index order
    descriptors: tuple[tuple[int, bytes], ...]
    stream_length: int

    @property
    def n_super_letters(self) -> int:
        return len(self.descriptors)

    @classmethod
    def from_grouping(cls, grouping: GroupingTable, stream_length: int) -> LevelHeader:
        return cls(
            tuple((sl.suffix_bits, bytes(sl.members)) for sl in grouping.super_letters),
            stream_length,
        )

    def validate(self) -> None:
        if not 1 <= len(self.descriptors) <= MAX_SUPER_LETTERS:
            raise ContainerError(f"level has {len(self.descriptors)} super-letters")
        seen = set()
        for index, (bits, members) in enumerate(self.descriptors):
            if not 0 <= bits <= 8:
                raise ContainerError(f"super-letter {index}: suffix_bits={bits}")
            if len(members) != 1 << bits:
                raise ContainerError(
                    f"super-letter {index}: {len(members)} members for suffix_bits={bits}"
                )
            if seen.intersection(members) or len(set(members)) != len(members):
                raise ContainerError(f"super-letter {index}: duplicate member symbols")
            seen.update(members)
        if self.stream_length <= 0:
            raise ContainerError("level with empty stream")


@dataclass(frozen=True)
class Level:
    header: LevelHeader
    suffix_bit_count: int
    suffix_bytes: bytes


@dataclass(frozen=True)
class EncodedContainer:
    original_length: int
    levels: tuple[Level, ...] = ()
    terminal_raw: bytes = b""
    version: int = VERSION

    def to_bytes(self) -> bytes:
        out = bytearray(MAGIC)
        out.append(self.version)
        write_uvarint(out, self.original_length)
        write_uvarint(out, len(self.levels))
        for level in self.levels:
            header = level.header
            out.append(header.n_super_letters)
            for bits, members in header.descriptors:
                out.append(bits)
                out += members
            write_uvarint(out, header.stream_length)
            write_uvarint(out, level.suffix_bit_count)
            out += level.suffix_bytes
        write_uvarint(out, len(self.terminal_raw))
        out += self.terminal_raw
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> EncodedContainer:
        data = bytes(data)
        if data[:4] != MAGIC:
            raise ContainerError("not an RCGS container (bad magic)")
        if len(data) < 5:
            raise ContainerError("truncated container header")
        if data[4] != VERSION:
            raise ContainerError(f"unsupported container version {data[4]}")
        pos = 5
        original_length, pos = read_uvarint(data, pos)
        level_count, pos = read_uvarint(data, pos)
        if level_count > MAX_CONTAINER_LEVELS:
            raise ContainerError(f"implausible level count {level_count}")

        def take(n: int) -> bytes:
            nonlocal pos
            if pos + n > len(data):
                raise ContainerError("truncated container")
            chunk = data[pos:pos + n]
            pos += n
            return chunk

        levels = []
        for _ in range(level_count):
            n_sl = take(1)[0]
            if not 1 <= n_sl <= MAX_SUPER_LETTERS:
                raise ContainerError(f"level has {n_sl} super-letters")
            descriptors = []
            for _ in range(n_sl):
                bits = take(1)[0]
                if bits > 8:
                    raise ContainerError(f"suffix_bits={bits} exceeds 8")
                descriptors.append((bits, take(1 << bits)))
            stream_length, pos = read_uvarint(data, pos)
            bit_count, pos = read_uvarint(data, pos)
            suffix = take((bit_count + 7) >> 3)
            levels.append(Level(LevelHeader(tuple(descriptors), stream_length), bit_count, suffix))
        terminal_length, pos = read_uvarint(data, pos)
        terminal = take(terminal_length)
        if pos != len(data):
            raise ContainerError(f"{len(data) - pos} trailing bytes after container")
        return cls(original_length, tuple(levels), terminal)


@dataclass(frozen=True)
class _SymbolTables:
    sl_index: np.ndarray
    suffix_index: np.ndarray
    suffix_bits: np.ndarray


def _symbol_tables(grouping: GroupingTable) -> _SymbolTables:
    sl_index = np.zeros(256, dtype=np.uint8)
    suffix_index = np.zeros(256, dtype=np.uint8)
    suffix_bits = np.zeros(256, dtype=np.uint8)
    for sym, (sl, pos, bits) in grouping.per_symbol.items():
        sl_index[sym] = sl
        suffix_index[sym] = pos
        suffix_bits[sym] = bits
    return _SymbolTables(sl_index, suffix_index, suffix_bits)


def split_streams(stream, grouping: GroupingTable) -> tuple[np.ndarray, bytes, int]:
    """Split bytes into super-letter indices and packed suffix indices.

    Returns ``(super_letter_stream, suffix_bytes, suffix_bit_count)``.
    """
    data = as_uint8(stream)
    present = np.bincount(data, minlength=256) > 0
    mapped = np.zeros(256, dtype=bool)
    mapped[list(grouping.per_symbol)] = True
    if np.any(present & ~mapped):
        missing = np.flatnonzero(present & ~mapped).tolist()
        raise KeyError(f"symbols {missing} have no super-letter")
    tables = _symbol_tables(grouping)
    sl_stream = tables.sl_index[data]
    suffix_bytes, bit_count = pack_varwidth(tables.suffix_index[data], tables.suffix_bits[data])
    return sl_stream, suffix_bytes, bit_count


def pair_nibbles(sl_stream) -> np.ndarray:
    nibbles = np.asarray(sl_stream, dtype=np.uint8)
    if nibbles.size and int(nibbles.max()) >= 16:
        raise ValueError("super-letter index does not fit in a nibble")
    if nibbles.size & 1:
        nibbles = np.concatenate([nibbles, np.zeros(1, dtype=np.uint8)])
    return (nibbles[0::2] << 4) | nibbles[1::2]


def unpair_nibbles(paired, out_length: int) -> np.ndarray:
    paired = np.asarray(paired, dtype=np.uint8)
    if (out_length + 1) >> 1 != paired.size or out_length < 0:
        raise ContainerError(f"{paired.size} paired bytes cannot hold {out_length} nibbles")
    out = np.empty(paired.size << 1, dtype=np.uint8)
    out[0::2] = paired >> 4
    out[1::2] = paired & 0x0F
    return out[:out_length]


def encode_levels(data: bytes, config: EncoderConfig = EncoderConfig()) -> EncodedContainer:
    stream = as_uint8(data)
    levels = []
    while stream.size > config.raw_threshold and len(levels) < config.max_levels:
        grouping = form_super_letters(
            count_frequencies(stream), config.t_delta, config.t_delta_step, config.max_retries
        )
        sl_stream, suffix_bytes, bit_count = split_streams(stream, grouping)
        levels.append(Level(LevelHeader.from_grouping(grouping, int(stream.size)), bit_count, suffix_bytes))
        stream = pair_nibbles(sl_stream)
    return EncodedContainer(len(data), tuple(levels), stream.tobytes())


def encode(data, config: EncoderConfig = EncoderConfig()) -> bytes:
    """Compress ``data`` and return the serialized container."""
    return encode_levels(bytes(data), config).to_bytes()


def _decode_level(level: Level, paired: np.ndarray) -> np.ndarray:
    header = level.header
    header.validate()
    sl_stream = unpair_nibbles(paired, header.stream_length)
    n_sl = header.n_super_letters
    if sl_stream.size and int(sl_stream.max()) >= n_sl:
        raise ContainerError(f"super-letter index out of range for {n_sl} super-letters")
    widths = np.zeros(16, dtype=np.uint8)
    # (super-letter << 8) | suffix -> original symbol
    lookup = np.zeros(16 << 8, dtype=np.uint8)
    for index, (bits, members) in enumerate(header.descriptors):
        widths[index] = bits
        base = index << 8
        lookup[base:base + len(members)] = np.frombuffer(members, dtype=np.uint8)
    try:
        suffixes = unpack_varwidth(level.suffix_bytes, level.suffix_bit_count, widths[sl_stream])
    except BitstreamExhausted as exc:
        raise ContainerError(f"suffix stream inconsistent: {exc}") from exc
    return lookup[(sl_stream.astype(np.intp) << 8) | suffixes]


def decode(container) -> bytes:
    """Reconstruct the original bytes from a container (object or serialized)."""
    if not isinstance(container, EncodedContainer):
        container = EncodedContainer.from_bytes(container)
    if container.version != VERSION:
        raise ContainerError(f"unsupported container version {container.version}")
    levels = container.levels
    expected = container.original_length
    for level in levels:
        if level.header.stream_length != expected:
            raise ContainerError(
                f"level stream_length {level.header.stream_length}, expected {expected}"
            )
        expected = (expected + 1) >> 1
    if len(container.terminal_raw) != expected:
        raise ContainerError(
            f"terminal block holds {len(container.terminal_raw)} bytes, expected {expected}"
        )
    stream = np.frombuffer(container.terminal_raw, dtype=np.uint8)
    for level in reversed(levels):
        stream = _decode_level(level, stream)
    return stream.tobytes()


def encoded_bits_per_symbol(container) -> float:
    if isinstance(container, EncodedContainer):
        original, size = container.original_length, len(container.to_bytes())
    else:
        original, size = EncodedContainer.from_bytes(container).original_length, len(container)
    if original == 0:
        raise ValueError("bits/symbol undefined for an empty original")
    return 8.0 * size / original


def header_bytes(container: EncodedContainer) -> int:
    """Bytes of the container that are not suffix payload or terminal data."""
    payload = sum(len(level.suffix_bytes) for level in container.levels)
    return len(container.to_bytes()) - payload - len(container.terminal_raw)
