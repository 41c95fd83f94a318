"""Greedy power-of-two grouping of symbols into super-letters.

Symbols are sorted by ascending probability and consumed from the rare end.
At each step the largest power-of-two run whose relative redundancy stays
within the threshold becomes a super-letter; its members are then
identified by a fixed-width suffix index of ``log2(M)`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .errors import GroupingError
from .model import FrequencyTable

MAX_SUPER_LETTERS = 16
CANDIDATE_SIZES = (256, 128, 64, 32, 16, 8, 4, 2, 1)

DEFAULT_T_DELTA = 0.01
DEFAULT_T_DELTA_STEP = 0.005
DEFAULT_MAX_RETRIES = 64


@dataclass(frozen=True)
class SuperLetter:
    index: int
    suffix_bits: int
    members: tuple[int, ...]
    aggregate_prob: float = 0.0

    def __post_init__(self) -> None:
        if len(self.members) != 1 << self.suffix_bits:
            raise ValueError(
                f"super-letter {self.index}: {len(self.members)} members "
                f"for {self.suffix_bits} suffix bits"
            )


@dataclass(frozen=True)
class GroupingTable:
    super_letters: tuple[SuperLetter, ...]
    # symbol -> (super-letter index, suffix index, suffix bits)
    per_symbol: dict[int, tuple[int, int, int]]
    t_delta_used: float

    @property
    def n_super_letters(self) -> int:
        return len(self.super_letters)

    @classmethod
    def from_super_letters(
        cls, super_letters, t_delta_used: float = 0.0
    ) -> GroupingTable:
        super_letters = tuple(super_letters)
        per_symbol: dict[int, tuple[int, int, int]] = {}
        for sl in super_letters:
            for pos, sym in enumerate(sl.members):
                if sym in per_symbol:
                    raise ValueError(f"symbol {sym} assigned to two super-letters")
                per_symbol[sym] = (sl.index, pos, sl.suffix_bits)
        return cls(super_letters, per_symbol, t_delta_used)


def _check_power_of_two(m: int) -> None:
    if m < 1 or m & (m - 1):
        raise ValueError(f"group size must be a power of two, got {m}")


def group_redundancy(member_probs, m: int) -> float:
    """Relative code-length increase from coding ``m`` symbols as one super-letter.

    Coding a member with the group's probability plus ``log2(m)`` suffix bits
    costs ``p_s * (log2 m - log2 p_s)`` in total; the result is that cost
    relative to the members' own entropy contribution.
    """
    _check_power_of_two(m)
    probs = list(member_probs)
    if len(probs) != m:
        raise ValueError(f"expected {m} probabilities, got {len(probs)}")
    if any(p <= 0 for p in probs):
        raise ValueError("probabilities must be positive")
    p_s = math.fsum(probs)
    h_g = -math.fsum(p * math.log2(p) for p in probs)
    if h_g == 0.0:
        return 0.0
    cost = p_s * (math.log2(m) - math.log2(p_s))
    return (cost - h_g) / h_g


def _greedy_pass(
    symbols: list[int], probs: list[float], threshold: float
) -> list[tuple[int, int]]:
    """One run of the grouping loop; returns (start, size) pairs over ``symbols``."""
    n = len(symbols)
    # prefix sums of p and -p*log2(p) make every candidate O(1)
    cum_p = [0.0]
    cum_h = [0.0]
    for p in probs:
        cum_p.append(cum_p[-1] + p)
        cum_h.append(cum_h[-1] - p * math.log2(p))
    groups = []
    start = 0
    while start < n:
        remaining = n - start
        for m in CANDIDATE_SIZES:
            if m > remaining:
                continue
            if m == 1:
                break
            p_s = cum_p[start + m] - cum_p[start]
            h_g = cum_h[start + m] - cum_h[start]
            cost = p_s * (math.log2(m) - math.log2(p_s))
            if cost - h_g <= threshold * h_g:
                break
        groups.append((start, m))
        start += m
    return groups


def form_super_letters(
    table: FrequencyTable,
    t_delta: float = DEFAULT_T_DELTA,
    t_delta_step: float = DEFAULT_T_DELTA_STEP,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> GroupingTable:
    if table.total <= 0:
        raise ValueError("cannot group an empty frequency table")
    if not 0.0 < t_delta < 1.0:
        raise ValueError(f"t_delta must lie in (0, 1), got {t_delta}")
    total = table.total
    symbols = sorted(table.present(), key=lambda s: (table.counts[s], s))
    probs = [table.counts[s] / total for s in symbols]

    threshold = t_delta
    for attempt in range(max_retries + 1):
        groups = _greedy_pass(symbols, probs, threshold)
        if len(groups) <= MAX_SUPER_LETTERS:
            break
        if attempt < max_retries:
            threshold += t_delta_step
    else:
        raise GroupingError(len(groups), threshold)

    super_letters = []
    for index, (start, m) in enumerate(groups):
        members = tuple(symbols[start:start + m])
        super_letters.append(SuperLetter(
            index=index,
            suffix_bits=m.bit_length() - 1,
            members=members,
            aggregate_prob=math.fsum(probs[start:start + m]),
        ))
    return GroupingTable.from_super_letters(super_letters, threshold)


def grouped_code_length(table: FrequencyTable, grouping: GroupingTable) -> float:
    """Ideal one-level cost in bits/symbol: super-letter entropy plus suffix bits."""
    if table.total <= 0:
        raise ValueError("empty frequency table")
    present = set(table.present())
    if present != set(grouping.per_symbol):
        raise ValueError("grouping does not cover exactly the table's symbols")
    bits = 0.0
    for sl in grouping.super_letters:
        p_s = sum(table.counts[s] for s in sl.members) / table.total
        if 0.0 < p_s < 1.0:
            bits -= p_s * math.log2(p_s)
        bits += p_s * sl.suffix_bits
    return bits
