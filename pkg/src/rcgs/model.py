"""Order-0 static model: byte frequency tables and empirical entropy."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

ALPHABET_SIZE = 256


@dataclass(frozen=True)
class FrequencyTable:
    counts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if len(self.counts) != ALPHABET_SIZE:
            raise ValueError(f"expected {ALPHABET_SIZE} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        if sum(self.counts) != self.total:
            raise ValueError("total does not match the sum of counts")

    @classmethod
    def from_counts(cls, counts) -> FrequencyTable:
        counts = tuple(int(c) for c in counts)
        return cls(counts, sum(counts))

    def probability(self, symbol: int) -> float:
        if self.total == 0:
            raise ValueError("probability undefined for an empty table")
        return self.counts[symbol] / self.total

    def present(self) -> list[int]:
        return [s for s, c in enumerate(self.counts) if c]

    @property
    def distinct_symbols(self) -> int:
        return sum(1 for c in self.counts if c)


@dataclass(frozen=True)
class AlphabetStats:
    distinct_symbols: int
    entropy_bits: float


def as_uint8(stream) -> np.ndarray:
    if isinstance(stream, np.ndarray):
        if stream.dtype != np.uint8:
            raise TypeError(f"expected a uint8 array, got {stream.dtype}")
        return stream
    return np.frombuffer(bytes(stream), dtype=np.uint8)


def count_frequencies(stream) -> FrequencyTable:
    data = as_uint8(stream)
    counts = np.bincount(data, minlength=ALPHABET_SIZE)
    return FrequencyTable(tuple(counts.tolist()), int(data.size))


def entropy_bits_per_symbol(table: FrequencyTable) -> float:
    if table.total == 0:
        raise ValueError("entropy of an empty table is undefined")
    total = table.total
    h = 0.0
    for c in table.counts:
        if c and c != total:
            p = c / total
            h -= p * math.log2(p)
    return h


def alphabet_stats(table: FrequencyTable) -> AlphabetStats:
    return AlphabetStats(table.distinct_symbols, entropy_bits_per_symbol(table))


def stream_entropy(stream) -> float:
    """Order-0 entropy of a byte stream in bits/symbol."""
    return entropy_bits_per_symbol(count_frequencies(stream))
