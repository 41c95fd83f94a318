"""MSB-first bit streams, LEB128-style varints and vectorized variable-width packing."""

from __future__ import annotations

import numpy as np

from .errors import BitstreamExhausted, ContainerError

_LOW_MASKS = np.array([(1 << w) - 1 for w in range(9)], dtype=np.uint16)


class BitSink:
    """Accumulates bits MSB-first into a byte buffer."""

    def __init__(self) -> None:
        self.buffer = bytearray()
        self.bit_position = 0
        self._acc = 0
        self._nacc = 0

    def write_bits(self, value: int, n_bits: int) -> None:
        if n_bits < 0:
            raise ValueError(f"negative bit count {n_bits}")
        if value < 0 or value >> n_bits:
            raise ValueError(f"value {value} does not fit in {n_bits} bits")
        self._acc = (self._acc << n_bits) | value
        self._nacc += n_bits
        self.bit_position += n_bits
        while self._nacc >= 8:
            self._nacc -= 8
            self.buffer.append((self._acc >> self._nacc) & 0xFF)
        self._acc &= (1 << self._nacc) - 1

    def align_to_byte(self) -> None:
        if self._nacc:
            pad = 8 - self._nacc
            self.buffer.append((self._acc << pad) & 0xFF)
            self.bit_position += pad
            self._acc = 0
            self._nacc = 0

    def getvalue(self) -> bytes:
        """Return the written bytes, including a zero-padded partial byte."""
        if self._nacc:
            return bytes(self.buffer) + bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return bytes(self.buffer)


class BitSource:
    def __init__(self, buffer: bytes) -> None:
        self.buffer = bytes(buffer)
        self.bit_position = 0

    @property
    def bits_remaining(self) -> int:
        return 8 * len(self.buffer) - self.bit_position

    def read_bits(self, n_bits: int) -> int:
        if n_bits < 0:
            raise ValueError(f"negative bit count {n_bits}")
        if n_bits > self.bits_remaining:
            raise BitstreamExhausted(
                f"requested {n_bits} bits with {self.bits_remaining} remaining"
            )
        value = 0
        pos = self.bit_position
        for _ in range(n_bits):
            byte = self.buffer[pos >> 3]
            value = (value << 1) | ((byte >> (7 - (pos & 7))) & 1)
            pos += 1
        self.bit_position = pos
        return value


def write_uvarint(sink: bytearray, value: int) -> None:
    if value < 0 or value >> 64:
        raise ValueError(f"uvarint out of range: {value}")
    while value > 0x7F:
        sink.append((value & 0x7F) | 0x80)
        value >>= 7
    sink.append(value)


def encode_uvarint(value: int) -> bytes:
    out = bytearray()
    write_uvarint(out, value)
    return bytes(out)


def read_uvarint(data: bytes, pos: int = 0) -> tuple[int, int]:
    """Decode a varint at ``pos``; returns ``(value, next_pos)``."""
    value = 0
    shift = 0
    for i in range(10):
        if pos + i >= len(data):
            raise ContainerError("truncated uvarint")
        byte = data[pos + i]
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            if value >> 64:
                raise ContainerError("uvarint exceeds 64 bits")
            return value, pos + i + 1
        shift += 7
    raise ContainerError("uvarint longer than 10 bytes")


def pack_varwidth(values: np.ndarray, widths: np.ndarray) -> tuple[bytes, int]:
    """Concatenate ``values[i]`` as ``widths[i]``-bit fields (0..8), MSB-first.

    Returns the zero-padded bytes and the exact number of bits written.
    """
    values = np.asarray(values, dtype=np.uint16)
    widths = np.asarray(widths, dtype=np.int64)
    ends = np.cumsum(widths)
    n_bits = int(ends[-1]) if ends.size else 0
    if n_bits == 0:
        return b"", 0
    starts = ends - widths
    # a field of <= 8 bits spans at most two bytes: place it in a 16-bit window
    window = values << (16 - (starts & 7) - widths).astype(np.uint16)
    byte_index = starts >> 3
    n_bytes = (n_bits + 7) >> 3
    # fields never overlap, so summing the window halves equals OR-ing them
    out = np.bincount(byte_index, weights=window >> 8, minlength=n_bytes + 2)
    out += np.bincount(byte_index + 1, weights=window & 0xFF, minlength=n_bytes + 2)
    return out[:n_bytes].astype(np.uint8).tobytes(), n_bits


def unpack_varwidth(data: bytes, n_bits: int, widths: np.ndarray) -> np.ndarray:
    """Inverse of :func:`pack_varwidth` given the field widths."""
    widths = np.asarray(widths, dtype=np.int64)
    ends = np.cumsum(widths)
    needed = int(ends[-1]) if ends.size else 0
    if needed != n_bits:
        raise BitstreamExhausted(f"field widths need {needed} bits, stream holds {n_bits}")
    if len(data) != (n_bits + 7) >> 3:
        raise ContainerError(f"{n_bits}-bit stream stored in {len(data)} bytes")
    if n_bits == 0:
        return np.zeros(widths.size, dtype=np.uint8)
    padded = np.frombuffer(data + b"\0\0", dtype=np.uint8).astype(np.uint16)
    words = (padded[:-1] << 8) | padded[1:]
    starts = ends - widths
    shifted = words[starts >> 3] >> (16 - (starts & 7) - widths).astype(np.uint16)
    return (shifted & _LOW_MASKS[widths]).astype(np.uint8)
