"""Scalar, loop-per-symbol reimplementation of the level split and container
writer.  Shares only the grouping step with the package, so it checks the
vectorized bit packing, nibble pairing and wire layout independently."""

from rcgs.bitio import BitSink, encode_uvarint
from rcgs.grouping import form_super_letters
from rcgs.model import count_frequencies


def reference_split(stream: bytes, grouping):
    sink = BitSink()
    sl_stream = []
    for sym in stream:
        sl, suffix, bits = grouping.per_symbol[sym]
        sl_stream.append(sl)
        sink.write_bits(suffix, bits)
    return sl_stream, sink.getvalue(), sink.bit_position


def reference_pair(sl_stream):
    padded = list(sl_stream) + [0] * (len(sl_stream) % 2)
    return bytes((padded[i] << 4) | padded[i + 1] for i in range(0, len(padded), 2))


def reference_encode(data: bytes, t_delta=0.01, raw_threshold=64, max_levels=40) -> bytes:
    out = bytearray(b"RCGS\x01")
    body = bytearray()
    stream = bytes(data)
    n_levels = 0
    while len(stream) > raw_threshold and n_levels < max_levels:
        grouping = form_super_letters(count_frequencies(stream), t_delta)
        body.append(len(grouping.super_letters))
        for sl in grouping.super_letters:
            body.append(sl.suffix_bits)
            body += bytes(sl.members)
        body += encode_uvarint(len(stream))
        sl_stream, suffix, n_bits = reference_split(stream, grouping)
        body += encode_uvarint(n_bits) + suffix
        stream = reference_pair(sl_stream)
        n_levels += 1
    out += encode_uvarint(len(data)) + encode_uvarint(n_levels) + body
    out += encode_uvarint(len(stream)) + stream
    return bytes(out)


def reference_decode_level(header_descriptors, sl_stream, suffix_bytes):
    from rcgs.bitio import BitSource

    source = BitSource(suffix_bytes)
    out = bytearray()
    for sl in sl_stream:
        bits, members = header_descriptors[sl]
        out.append(members[source.read_bits(bits)])
    return bytes(out)
