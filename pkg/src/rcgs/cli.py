"""Command-line interface: ``rcgs {encode,decode,entropy,gen,analyze,bench}``."""

from __future__ import annotations

import argparse
from pathlib import Path
import sys

from . import bench, codec
from .datagen import GenSpec, generate
from .errors import RCGSError
from .grouping import grouped_code_length, form_super_letters
from .model import count_frequencies, entropy_bits_per_symbol


def _entropy(data: bytes) -> float:
    return entropy_bits_per_symbol(count_frequencies(data)) if data else 0.0


def _config(args) -> codec.EncoderConfig:
    return codec.EncoderConfig(t_delta=args.t_delta, raw_threshold=args.raw_threshold)


def cmd_encode(args) -> int:
    data = Path(args.input).read_bytes()
    packed = codec.encode(data, _config(args))
    Path(args.output).write_bytes(packed)
    bps = 8.0 * len(packed) / len(data) if data else 0.0
    print(f"original {len(data)} bytes, compressed {len(packed)} bytes")
    print(f"entropy {_entropy(data):.3f} bits/symbol, rcgs {bps:.3f} bits/symbol")
    return 0


def cmd_decode(args) -> int:
    packed = Path(args.input).read_bytes()
    data = codec.decode(packed)
    Path(args.output).write_bytes(data)
    print(f"decoded {len(data)} bytes")
    return 0


def cmd_entropy(args) -> int:
    for name in args.inputs:
        data = Path(name).read_bytes()
        print(f"{name}\t{len(data)}\t{_entropy(data):.3f}")
    return 0


def cmd_gen(args) -> int:
    spec = GenSpec(kind=args.kind, length=args.length, seed=args.seed, sigma_sq=args.sigma_sq,
                   qs=args.qs, p_stay=args.p_stay, source_image=args.image)
    data = generate(spec)
    Path(args.output).write_bytes(data)
    print(f"wrote {len(data)} bytes, entropy {_entropy(data):.3f} bits/symbol")
    return 0


def cmd_analyze(args) -> int:
    data = Path(args.input).read_bytes()
    container = codec.encode_levels(data, _config(args))
    print(f"{args.input}: {len(data)} bytes, {len(container.levels)} levels, "
          f"terminal {len(container.terminal_raw)} bytes")
    print("level\tlength\tN_s\tsizes\tt_delta\tentropy\tgrouped")
    stream = data
    for k, level in enumerate(container.levels):
        table = count_frequencies(stream)
        grouping = form_super_letters(table, args.t_delta)
        sizes = ",".join(str(1 << sl.suffix_bits) for sl in grouping.super_letters)
        print(f"{k}\t{level.header.stream_length}\t{grouping.n_super_letters}\t{sizes}\t"
              f"{grouping.t_delta_used:.3f}\t{entropy_bits_per_symbol(table):.3f}\t"
              f"{grouped_code_length(table, grouping):.3f}")
        sl_stream, _, _ = codec.split_streams(stream, grouping)
        stream = codec.pair_nibbles(sl_stream).tobytes()
    if data:
        print(f"total {8.0 * len(container.to_bytes()) / len(data):.3f} bits/symbol "
              f"vs entropy {_entropy(data):.3f}")
    return 0


def cmd_bench(args) -> int:
    coders = tuple(c.strip() for c in args.coders.split(",") if c.strip())
    report = bench.run_bench(bench.load_inputs(args.inputs), coders, args.repeats, _config(args))
    text = bench.format_tsv(report) if args.format == "tsv" else bench.format_table(report)
    sys.stdout.write(text)
    return 1 if report.failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcgs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def coding_flags(p):
        p.add_argument("--t-delta", type=float, default=0.01, help="grouping threshold")
        p.add_argument("--raw-threshold", type=int, default=64,
                       help="stop recursing at streams of this many bytes")

    p = sub.add_parser("encode", help="compress a file into an .rcgs container")
    p.add_argument("input")
    p.add_argument("output")
    coding_flags(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="restore a file from an .rcgs container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("entropy", help="order-0 entropy in bits/symbol")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("gen", help="write a synthetic corpus")
    p.add_argument("kind", choices=("gaussian", "markov", "dct"))
    p.add_argument("output")
    p.add_argument("--length", type=int, default=None,
                   help="bytes to generate (default 262144; dct: whole image)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sigma-sq", type=float, default=25.0)
    p.add_argument("--qs", type=float, default=1.0)
    p.add_argument("--p-stay", type=float, default=0.99)
    p.add_argument("--image", help="8-bit PGM source for dct")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="print per-level grouping statistics")
    p.add_argument("input")
    coding_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bench", help="compare RCGS with the AC and Huffman baselines")
    p.add_argument("inputs", nargs="+",
                   help="files, directories, or gen:KIND,key=value,... specs")
    p.add_argument("--coders", default=",".join(bench.CODER_NAMES))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--format", choices=("table", "tsv"), default="table")
    coding_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "gen" and args.length is None and args.kind != "dct":
        args.length = 262144
    try:
        return args.func(args)
    except (OSError, RCGSError, ValueError, KeyError) as exc:
        print(f"rcgs {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
