"""Static order-0 baselines: a 32-bit range coder and a canonical Huffman coder.

Both serialize their model as run-length-coded uvarint counts so that the
reported sizes include the probability table, like the stored AC/HC
streams they stand in for.  ``ac_compress``/``huffman_compress`` produce
self-contained streams ``uvarint(length) | model | payload``.
"""

from __future__ import annotations

from dataclasses import dataclass
import heapq

from .bitio import read_uvarint, write_uvarint
from .errors import ContainerError
from .model import FrequencyTable, count_frequencies

SCALE_BITS = 14
SCALE_TOTAL = 1 << SCALE_BITS
_TOP = 1 << 24
_MASK32 = 0xFFFFFFFF


def write_counts(out: bytearray, counts) -> None:
    """256 uvarint counts; a zero count is followed by the number of further zeros."""
    counts = list(counts)
    i = 0
    while i < len(counts):
        write_uvarint(out, counts[i])
        if counts[i] == 0:
            j = i + 1
            while j < len(counts) and counts[j] == 0:
                j += 1
            write_uvarint(out, j - i - 1)
            i = j
        else:
            i += 1


def read_counts(data: bytes, pos: int = 0) -> tuple[list[int], int]:
    counts: list[int] = []
    while len(counts) < 256:
        value, pos = read_uvarint(data, pos)
        counts.append(value)
        if value == 0:
            run, pos = read_uvarint(data, pos)
            counts.extend([0] * run)
    if len(counts) != 256:
        raise ContainerError("zero run overflows the 256-symbol alphabet")
    return counts, pos


# ---------------------------------------------------------------------------
# Arithmetic (range) coder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CumulativeModel:
    freqs: tuple[int, ...]
    cum: tuple[int, ...]

    @property
    def total_scaled(self) -> int:
        return self.cum[256]

    @classmethod
    def from_scaled(cls, freqs) -> CumulativeModel:
        freqs = tuple(int(f) for f in freqs)
        if len(freqs) != 256 or sum(freqs) > SCALE_TOTAL or sum(freqs) == 0:
            raise ValueError("scaled counts must be 256 values summing to 1..2^14")
        cum = [0]
        for f in freqs:
            cum.append(cum[-1] + f)
        return cls(freqs, tuple(cum))

    @classmethod
    def from_table(cls, table: FrequencyTable) -> CumulativeModel:
        if table.total == 0:
            raise ValueError("cannot model an empty table")
        if table.total <= SCALE_TOTAL:
            return cls.from_scaled(table.counts)
        total = table.total
        scaled = [max(1, c * SCALE_TOTAL // total) if c else 0 for c in table.counts]
        excess = sum(scaled) - SCALE_TOTAL
        by_size = sorted(range(256), key=lambda s: (-table.counts[s], s))
        if excess < 0:
            scaled[by_size[0]] -= excess
        # floors can overshoot the budget; shave it off the commonest symbols
        while excess > 0:
            for s in by_size:
                if excess == 0 or scaled[s] <= 1:
                    break
                scaled[s] -= 1
                excess -= 1
        return cls.from_scaled(scaled)


def ac_encode(data: bytes, model: CumulativeModel) -> bytes:
    freqs, cum, total = model.freqs, model.cum, model.total_scaled
    out = bytearray()
    low = 0
    rng = _MASK32
    cache = 0
    cache_size = 1
    for sym in data:
        freq = freqs[sym]
        if not freq:
            raise KeyError(f"symbol {sym} is absent from the model")
        r = rng // total
        low += r * cum[sym]
        rng = r * freq
        while rng < _TOP:
            rng <<= 8
            # shift out the top byte of low, resolving any pending carry
            if low < 0xFF000000 or low > _MASK32:
                carry = low >> 32
                out.append((cache + carry) & 0xFF)
                out.extend([(0xFF + carry) & 0xFF] * (cache_size - 1))
                cache_size = 0
                cache = (low >> 24) & 0xFF
            cache_size += 1
            low = (low << 8) & _MASK32
    for _ in range(5):
        if low < 0xFF000000 or low > _MASK32:
            carry = low >> 32
            out.append((cache + carry) & 0xFF)
            out.extend([(0xFF + carry) & 0xFF] * (cache_size - 1))
            cache_size = 0
            cache = (low >> 24) & 0xFF
        cache_size += 1
        low = (low << 8) & _MASK32
    # the first emitted byte is always the initial zero cache
    return bytes(out[1:])


def ac_decode(payload: bytes, model: CumulativeModel, length: int) -> bytes:
    freqs, cum, total = model.freqs, model.cum, model.total_scaled
    lookup = bytearray(total)
    for s in range(256):
        lookup[cum[s]:cum[s + 1]] = bytes([s]) * freqs[s]
    data = payload + bytes(4)  # tail reads past the flush are zero
    if len(payload) < 4 and length:
        raise ContainerError("arithmetic payload too short")
    code = int.from_bytes(data[:4], "big")
    pos = 4
    rng = _MASK32
    out = bytearray(length)
    for i in range(length):
        r = rng // total
        v = code // r
        if v >= total:
            raise ContainerError("corrupt arithmetic payload")
        sym = lookup[v]
        out[i] = sym
        code -= r * cum[sym]
        rng = r * freqs[sym]
        while rng < _TOP:
            if pos >= len(data):
                raise ContainerError("arithmetic payload exhausted")
            code = ((code << 8) | data[pos]) & _MASK32
            pos += 1
            rng <<= 8
    return bytes(out)


def ac_compress(data: bytes) -> bytes:
    data = bytes(data)
    out = bytearray()
    write_uvarint(out, len(data))
    if not data:
        return bytes(out)
    model = CumulativeModel.from_table(count_frequencies(data))
    write_counts(out, model.freqs)
    out += ac_encode(data, model)
    return bytes(out)


def ac_decompress(stream: bytes) -> bytes:
    length, pos = read_uvarint(stream, 0)
    if length == 0:
        return b""
    freqs, pos = read_counts(stream, pos)
    return ac_decode(stream[pos:], CumulativeModel.from_scaled(freqs), length)


# ---------------------------------------------------------------------------
# Huffman coder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HuffmanCode:
    lengths: tuple[int, ...]  # 0 for symbols without a code
    codes: tuple[int, ...]

    def expected_length(self, table: FrequencyTable) -> float:
        return sum(c * l for c, l in zip(table.counts, self.lengths)) / table.total

    def kraft_sum(self) -> float:
        return sum(2.0 ** -l for l in self.lengths if l)


def huffman_lengths(weights) -> list[int]:
    """Optimal code lengths for positive ``weights`` (a one-symbol code gets length 1)."""
    weights = list(weights)
    if not weights:
        raise ValueError("no symbols to code")
    if len(weights) == 1:
        return [1]
    # (weight, tiebreak, leaves below this node)
    heap = [(w, i, [i]) for i, w in enumerate(weights)]
    heapq.heapify(heap)
    lengths = [0] * len(weights)
    tiebreak = len(weights)
    while len(heap) > 1:
        w1, _, a = heapq.heappop(heap)
        w2, _, b = heapq.heappop(heap)
        for leaf in a:
            lengths[leaf] += 1
        for leaf in b:
            lengths[leaf] += 1
        heapq.heappush(heap, (w1 + w2, tiebreak, a + b))
        tiebreak += 1
    return lengths


def canonical_codes(lengths) -> list[int]:
    codes = [0] * len(lengths)
    code = 0
    prev = 0
    for length, sym in sorted((l, s) for s, l in enumerate(lengths) if l):
        code <<= length - prev
        codes[sym] = code
        code += 1
        prev = length
    return codes


def huffman_build(table: FrequencyTable) -> HuffmanCode:
    present = table.present()
    if not present:
        raise ValueError("cannot build a code for an empty table")
    lengths = [0] * 256
    for sym, length in zip(present, huffman_lengths([table.counts[s] for s in present])):
        lengths[sym] = length
    return HuffmanCode(tuple(lengths), tuple(canonical_codes(lengths)))


def huffman_encode(data: bytes, code: HuffmanCode) -> tuple[bytes, int]:
    """Returns the MSB-first payload (zero padded) and its bit count."""
    words = [format(c, f"0{l}b") if l else None for c, l in zip(code.codes, code.lengths)]
    try:
        bits = "".join([words[b] for b in data])
    except TypeError:
        missing = sorted({b for b in data if not code.lengths[b]})
        raise KeyError(f"symbols {missing} have no Huffman code") from None
    n_bits = len(bits)
    if not n_bits:
        return b"", 0
    pad = -n_bits % 8
    return int(bits + "0" * pad, 2).to_bytes((n_bits + pad) >> 3, "big"), n_bits


def huffman_decode(payload: bytes, code: HuffmanCode, length: int) -> bytes:
    # canonical decoding: per code length, the first code and its symbol run
    by_length: dict[int, list[int]] = {}
    for sym in sorted(range(256), key=lambda s: (code.lengths[s], s)):
        if code.lengths[sym]:
            by_length.setdefault(code.lengths[sym], []).append(sym)
    max_len = max(by_length)
    first = [0] * (max_len + 2)
    count = [0] * (max_len + 2)
    offset = [0] * (max_len + 2)
    ordered: list[int] = []
    c = 0
    for l in range(1, max_len + 1):
        syms = by_length.get(l, [])
        first[l] = c
        count[l] = len(syms)
        offset[l] = len(ordered)
        ordered.extend(syms)
        c = (c + len(syms)) << 1

    bits = bin(int.from_bytes(payload, "big") | (1 << (8 * len(payload))))[3:] if payload else ""
    out = bytearray()
    acc = 0
    l = 0
    for ch in bits:
        acc = (acc << 1) | (ch == "1")
        l += 1
        k = acc - first[l]
        if k < count[l]:
            out.append(ordered[offset[l] + k])
            if len(out) == length:
                return bytes(out)
            acc = 0
            l = 0
        elif l == max_len:
            raise ContainerError("invalid Huffman code word")
    if len(out) != length:
        raise ContainerError("Huffman payload exhausted")
    return bytes(out)


def huffman_compress(data: bytes) -> bytes:
    data = bytes(data)
    out = bytearray()
    write_uvarint(out, len(data))
    if not data:
        return bytes(out)
    table = count_frequencies(data)
    write_counts(out, table.counts)
    payload, _ = huffman_encode(data, huffman_build(table))
    out += payload
    return bytes(out)


def huffman_decompress(stream: bytes) -> bytes:
    length, pos = read_uvarint(stream, 0)
    if length == 0:
        return b""
    counts, pos = read_counts(stream, pos)
    return huffman_decode(stream[pos:], huffman_build(FrequencyTable.from_counts(counts)), length)
