import itertools
import random

from hypothesis import given, strategies as st
import numpy as np
import pytest

from rcgs.bitio import (
    BitSink,
    BitSource,
    encode_uvarint,
    pack_varwidth,
    read_uvarint,
    unpack_varwidth,
)
from rcgs.errors import BitstreamExhausted, ContainerError


def test_msb_first_three_bits():
    sink = BitSink()
    sink.write_bits(0b101, 3)
    sink.align_to_byte()
    assert sink.getvalue() == bytes([0b1010_0000])
    assert sink.bit_position == 8


def test_zero_width_write_is_noop():
    sink = BitSink()
    sink.write_bits(0, 0)
    assert sink.bit_position == 0
    assert sink.getvalue() == b""


def test_hand_concatenation():
    sink = BitSink()
    for value, n in [(0xF, 4), (0x3, 2), (0x1, 2)]:
        sink.write_bits(value, n)
    assert sink.getvalue() == b"\xfd"
    source = BitSource(b"\xfd")
    assert [source.read_bits(n) for n in (4, 2, 2)] == [0xF, 0x3, 0x1]


def test_value_out_of_range():
    with pytest.raises(ValueError):
        BitSink().write_bits(8, 3)
    with pytest.raises(ValueError):
        BitSink().write_bits(1, 0)


def test_read_from_empty_source():
    with pytest.raises(BitstreamExhausted):
        BitSource(b"").read_bits(1)


def test_read_past_end_is_error_not_zero_fill():
    source = BitSource(b"\xff")
    source.read_bits(7)
    with pytest.raises(BitstreamExhausted):
        source.read_bits(2)


@pytest.mark.parametrize("n_bits", range(9))
def test_exhaustive_inverse(n_bits):
    for value in range(1 << n_bits):
        sink = BitSink()
        sink.write_bits(1, 1)  # misalign to exercise byte straddling
        sink.write_bits(value, n_bits)
        sink.align_to_byte()
        source = BitSource(sink.getvalue())
        assert source.read_bits(1) == 1
        assert source.read_bits(n_bits) == value


@given(st.lists(st.integers(0, 8).flatmap(
    lambda n: st.tuples(st.integers(0, (1 << n) - 1), st.just(n)))))
def test_replay_and_length(writes):
    sink = BitSink()
    for value, n in writes:
        sink.write_bits(value, n)
    total = sum(n for _, n in writes)
    assert sink.bit_position == total
    sink.align_to_byte()
    data = sink.getvalue()
    assert len(data) == (total + 7) // 8
    assert sink.bit_position % 8 == 0
    if total % 8:
        assert data[-1] & ((1 << (8 - total % 8)) - 1) == 0
    source = BitSource(data)
    assert [source.read_bits(n) for _, n in writes] == [v for v, _ in writes]


def test_wide_fields_randomized():
    rng = random.Random(5)
    writes = [(rng.getrandbits(n), n) for n in (rng.randrange(0, 40) for _ in range(500))]
    sink = BitSink()
    for value, n in writes:
        sink.write_bits(value, n)
    source = BitSource(sink.getvalue())
    assert [source.read_bits(n) for _, n in writes] == [v for v, _ in writes]


@pytest.mark.parametrize("value, encoded", [
    (0, b"\x00"), (127, b"\x7f"), (128, b"\x80\x01"), (300, b"\xac\x02"),
    ((1 << 64) - 1, b"\xff" * 9 + b"\x01"),
])
def test_uvarint_vectors(value, encoded):
    assert encode_uvarint(value) == encoded
    assert read_uvarint(encoded) == (value, len(encoded))


def test_uvarint_random_round_trip():
    rng = random.Random(11)
    for _ in range(10_000):
        value = rng.getrandbits(rng.randrange(1, 65))
        data = encode_uvarint(value)
        assert read_uvarint(data + b"junk") == (value, len(data))


@pytest.mark.parametrize("data", [b"", b"\x80", b"\xff\xff", b"\x80" * 10 + b"\x00", b"\xff" * 9 + b"\x02"])
def test_uvarint_malformed(data):
    with pytest.raises(ContainerError):
        read_uvarint(data)


def test_uvarint_rejects_out_of_range():
    with pytest.raises(ValueError):
        encode_uvarint(-1)
    with pytest.raises(ValueError):
        encode_uvarint(1 << 64)


@pytest.mark.parametrize("seed", range(20))
def test_pack_varwidth_matches_bitsink(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(0, 2000))
    widths = rng.integers(0, 9, n)
    values = rng.integers(0, 256, n) & ((1 << widths) - 1)
    packed, n_bits = pack_varwidth(values, widths)
    sink = BitSink()
    for v, w in zip(values.tolist(), widths.tolist()):
        sink.write_bits(v, w)
    assert packed == sink.getvalue()
    assert n_bits == sink.bit_position
    assert unpack_varwidth(packed, n_bits, widths).tolist() == values.tolist()


def test_pack_varwidth_all_small_width_patterns():
    for widths in itertools.product(range(9), repeat=2):
        values = [(1 << w) - 1 for w in widths]
        packed, n_bits = pack_varwidth(values, widths)
        assert unpack_varwidth(packed, n_bits, widths).tolist() == values


def test_unpack_varwidth_detects_inconsistency():
    packed, n_bits = pack_varwidth([1, 2], [1, 2])
    with pytest.raises(BitstreamExhausted):
        unpack_varwidth(packed, n_bits, [1, 3])
    with pytest.raises(ContainerError):
        unpack_varwidth(packed + b"\x00", n_bits, [1, 2])
