"""Benchmark harness comparing RCGS against the AC and Huffman baselines."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
import statistics
import time
from typing import Callable

from . import baselines, codec
from .datagen import GenSpec, generate
from .model import count_frequencies, entropy_bits_per_symbol

CODER_NAMES = ("ac", "hc", "rcgs")
MIB = 1 << 20


@dataclass(frozen=True)
class Coder:
    name: str
    compress: Callable[[bytes], bytes]
    decompress: Callable[[bytes], bytes]


def make_coders(config: codec.EncoderConfig = codec.EncoderConfig()) -> dict[str, Coder]:
    return {
        "ac": Coder("ac", baselines.ac_compress, baselines.ac_decompress),
        "hc": Coder("hc", baselines.huffman_compress, baselines.huffman_decompress),
        "rcgs": Coder("rcgs", lambda data: codec.encode(data, config), codec.decode),
    }


@dataclass
class CoderResult:
    ok: bool
    compressed_bytes: int = 0
    bits_per_symbol: float = float("nan")
    encode_ms: float = float("nan")
    decode_ms: float = float("nan")
    error: str = ""

    def throughput(self, n_bytes: int, ms: float) -> float:
        return n_bytes / MIB / (ms / 1000.0) if ms > 0 else float("inf")


@dataclass
class BenchRow:
    name: str
    length: int
    entropy: float
    results: dict[str, CoderResult] = field(default_factory=dict)


@dataclass
class BenchReport:
    coders: tuple[str, ...]
    rows: list[BenchRow]

    @property
    def failed(self) -> bool:
        return any(not r.ok for row in self.rows for r in row.results.values())

    def average(self) -> BenchRow:
        avg = BenchRow("Average", round(statistics.fmean(r.length for r in self.rows)),
                       statistics.fmean(r.entropy for r in self.rows))
        for name in self.coders:
            cells = [row.results[name] for row in self.rows]
            if all(c.ok for c in cells):
                avg.results[name] = CoderResult(
                    ok=True,
                    compressed_bytes=round(statistics.fmean(c.compressed_bytes for c in cells)),
                    bits_per_symbol=statistics.fmean(c.bits_per_symbol for c in cells),
                    encode_ms=statistics.fmean(c.encode_ms for c in cells),
                    decode_ms=statistics.fmean(c.decode_ms for c in cells),
                )
            else:
                avg.results[name] = CoderResult(ok=False, error="FAILED")
        return avg


def time_ms(fn: Callable[[], object], repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - start) * 1000.0)
    return statistics.median(samples)


def bench_one(name: str, data: bytes, coders: dict[str, Coder], repeats: int = 3) -> BenchRow:
    entropy = entropy_bits_per_symbol(count_frequencies(data)) if data else 0.0
    row = BenchRow(name, len(data), entropy)
    for coder in coders.values():
        try:
            packed = coder.compress(data)
            ok = coder.decompress(packed) == data
            error = "" if ok else "round-trip mismatch"
        except Exception as exc:  # a crashing coder is reported, not fatal
            ok, error = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            row.results[coder.name] = CoderResult(ok=False, error=error)
            continue
        row.results[coder.name] = CoderResult(
            ok=True,
            compressed_bytes=len(packed),
            bits_per_symbol=8.0 * len(packed) / len(data) if data else 0.0,
            encode_ms=time_ms(lambda: coder.compress(data), repeats),
            decode_ms=time_ms(lambda: coder.decompress(packed), repeats),
        )
    return row


def load_inputs(specs) -> list[tuple[str, bytes]]:
    """Resolve file paths, directories (every regular file, sorted) and ``gen:`` specs."""
    inputs = []
    for spec in specs:
        if spec.startswith("gen:"):
            inputs.append((spec, generate(GenSpec.parse(spec[4:]))))
            continue
        path = Path(spec)
        if path.is_dir():
            for child in sorted(p for p in path.iterdir() if p.is_file()):
                inputs.append((child.name, child.read_bytes()))
        else:
            inputs.append((path.name, path.read_bytes()))
    return inputs


def run_bench(inputs, coder_names=CODER_NAMES, repeats: int = 3,
              config: codec.EncoderConfig = codec.EncoderConfig()) -> BenchReport:
    available = make_coders(config)
    unknown = set(coder_names) - set(available)
    if unknown:
        raise ValueError(f"unknown coders: {sorted(unknown)}")
    selected = {name: available[name] for name in coder_names}
    rows = [bench_one(name, data, selected, repeats) for name, data in inputs]
    return BenchReport(tuple(coder_names), rows)


def _cells(row: BenchRow, coders) -> list[str]:
    cells = [row.name, str(row.length), f"{row.entropy:.3f}"]
    for name in coders:
        r = row.results[name]
        cells.append(f"{r.bits_per_symbol:.3f}" if r.ok else "FAILED")
    for name in coders:
        r = row.results[name]
        if r.ok:
            cells += [f"{r.encode_ms:.2f}", f"{r.decode_ms:.2f}",
                      f"{r.throughput(row.length, r.encode_ms):.2f}",
                      f"{r.throughput(row.length, r.decode_ms):.2f}"]
        else:
            cells += ["FAILED"] * 4
    return cells


def _columns(coders) -> list[str]:
    cols = ["file", "bytes", "entropy"] + [f"{c}_bps" for c in coders]
    for c in coders:
        cols += [f"{c}_enc_ms", f"{c}_dec_ms", f"{c}_enc_MiBps", f"{c}_dec_MiBps"]
    return cols


def format_tsv(report: BenchReport) -> str:
    lines = ["\t".join(_columns(report.coders))]
    rows = report.rows + ([report.average()] if len(report.rows) > 1 else [])
    lines += ["\t".join(_cells(row, report.coders)) for row in rows]
    return "\n".join(lines) + "\n"


def format_table(report: BenchReport) -> str:
    header = _columns(report.coders)
    rows = report.rows + ([report.average()] if len(report.rows) > 1 else [])
    body = [_cells(row, report.coders) for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h)
              for i, h in enumerate(header)]
    fmt = lambda cells: "  ".join(  # noqa: E731
        c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths)))
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines += [fmt(r) for r in body]
    for row in report.rows:
        for name, r in row.results.items():
            if not r.ok:
                lines.append(f"{row.name}: {name} FAILED ({r.error})")
    return "\n".join(lines) + "\n"
