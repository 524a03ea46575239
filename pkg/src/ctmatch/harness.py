"""Corpus handling, random instances, search dispatch and benchmarking.

Random data comes from SplitMix64, a fixed 64-bit mixing generator, so that
a (length, alphabet, seed) triple yields the same corpus on every platform
and Python version.  Benchmarks time preprocessing and search separately
with a monotonic clock and report means over a configured number of
repetitions, one CSV row per (algorithm, pattern count, length spec) cell.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import IO, Optional, Sequence, Union

import numpy as np

from .errors import ConfigurationError, InputError
from .fingerprints import (
    BINARY_EXACT_MAX_BITS,
    DEFAULT_MODULUS,
    PD_EXACT_MAX_LEN,
    EncodingKind,
    FingerprintConfig,
    choose_block_size,
)
from .matchers import (
    MatchHit,
    as_preprocess,
    as_search,
    naive_search,
    prepare_patterns,
    rk_preprocess,
    rk_search,
    wm_preprocess,
    wm_search,
)

__all__ = [
    "SplitMix64",
    "LengthSpec",
    "SearchOptions",
    "SearchResult",
    "BenchConfig",
    "BenchRecord",
    "ALGORITHMS",
    "BENCH_CSV_HEADER",
    "load_sequence",
    "load_patterns",
    "write_sequence",
    "write_patterns",
    "generate",
    "extract_patterns",
    "run_search",
    "bench",
    "format_hits",
    "write_bench_csv",
    "read_bench_csv",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(x: int) -> int:
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK64
    return x ^ (x >> 31)


class SplitMix64:
    """SplitMix64 stream: state advances by a fixed odd constant and each
    output is a mix of the state.  Platform-independent by construction."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform draw from [0, n); the modulo bias is below n / 2**64."""
        if n < 1:
            raise ValueError("below() requires n >= 1")
        return self.next_u64() % n


def _substream_seed(seed: int, index: int) -> int:
    """Deterministic child seed: the (index+1)-th output of the parent."""
    return _mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


def generate(length: int, alphabet_size: int, seed: int) -> list[int]:
    """Uniform i.i.d. integers in [0, alphabet_size), SplitMix64-driven.

    Identical (length, alphabet_size, seed) triples produce identical
    sequences; the vectorized evaluation below matches the scalar
    ``SplitMix64(seed).below(alphabet_size)`` stream element for element.
    """
    if length < 0:
        raise InputError("length must be >= 0")
    if alphabet_size < 1:
        raise InputError("alphabet_size must be >= 1")
    if length == 0:
        return []
    idx = np.arange(1, length + 1, dtype=np.uint64)
    x = np.uint64(seed & _MASK64) + idx * np.uint64(_GOLDEN)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX1)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_MIX2)
    x = x ^ (x >> np.uint64(31))
    return (x % np.uint64(alphabet_size)).astype(np.int64).tolist()


@dataclass(frozen=True)
class LengthSpec:
    """Pattern length specification: fixed (lo == hi) or an interval."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise InputError(f"bad length spec [{self.lo}, {self.hi}]")

    @classmethod
    def fixed(cls, m: int) -> "LengthSpec":
        return cls(m, m)

    @classmethod
    def interval(cls, lo: int, hi: int) -> "LengthSpec":
        return cls(lo, hi)

    @property
    def is_fixed(self) -> bool:
        return self.lo == self.hi

    def label(self) -> str:
        return f"m={self.lo}" if self.is_fixed else f"[{self.lo},{self.hi}]"

    @classmethod
    def parse(cls, text: str) -> "LengthSpec":
        """Inverse of ``label``; also accepts a bare integer."""
        text = text.strip()
        try:
            if text.startswith("m="):
                return cls.fixed(int(text[2:]))
            if text.startswith("[") and text.endswith("]"):
                lo, hi = text[1:-1].split(",")
                return cls.interval(int(lo), int(hi))
            return cls.fixed(int(text))
        except ValueError as exc:
            raise InputError(f"cannot parse length spec {text!r}") from exc


def extract_patterns(
    text: Sequence[int], k: int, spec: LengthSpec, seed: int
) -> list[list[int]]:
    """Cut k patterns out of ``text`` at uniformly random positions.

    For an interval spec, each pattern's length is drawn uniformly from
    [lo, hi] before its start position.  Deterministic per seed.
    """
    n = len(text)
    if k < 1:
        raise InputError("k must be >= 1")
    if spec.hi > n:
        raise InputError(
            f"length spec {spec.label()} exceeds text length {n}"
        )
    rng = SplitMix64(seed)
    out = []
    for _ in range(k):
        length = spec.lo if spec.is_fixed else spec.lo + rng.below(spec.hi - spec.lo + 1)
        start = rng.below(n - length + 1)
        out.append(list(text[start : start + length]))
    return out


def load_sequence(
    path: str, fmt: str = "plain", column: Optional[str] = None
) -> list[int]:
    """Read an integer sequence from a file.

    ``plain``: whitespace/newline-separated signed decimal integers.
    ``csv``: one value per row taken from the named ``column`` (suits
    hourly-measurement exports).  Parse failures report the line number.
    """
    if fmt == "plain":
        values: list[int] = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                for token in line.split():
                    try:
                        values.append(int(token))
                    except ValueError as exc:
                        raise InputError(
                            f"{path}:{lineno}: not an integer: {token!r}"
                        ) from exc
        if not values:
            raise InputError(f"{path}: empty input")
        return values
    if fmt == "csv":
        if column is None:
            raise ConfigurationError("csv input requires a column name")
        values = []
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or column not in reader.fieldnames:
                raise InputError(f"{path}: no column {column!r} in header")
            for row in reader:
                token = row[column]
                try:
                    values.append(int(token))
                except (TypeError, ValueError) as exc:
                    raise InputError(
                        f"{path}:{reader.line_num}: not an integer: {token!r}"
                    ) from exc
        if not values:
            raise InputError(f"{path}: empty input")
        return values
    raise ConfigurationError(f"unknown input format {fmt!r}")


def load_patterns(path: str) -> list[list[int]]:
    """Read patterns, one whitespace-separated pattern per line; blank lines
    are ignored."""
    patterns = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            tokens = line.split()
            if not tokens:
                continue
            try:
                patterns.append([int(t) for t in tokens])
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: bad pattern line") from exc
    if not patterns:
        raise InputError(f"{path}: no patterns")
    return patterns


def write_sequence(seq: Sequence[int], fh: IO[str]) -> None:
    """One value per line; ``load_sequence`` reads this back verbatim."""
    for v in seq:
        fh.write(f"{v}\n")


def write_patterns(patterns: Sequence[Sequence[int]], fh: IO[str]) -> None:
    for p in patterns:
        fh.write(" ".join(map(str, p)) + "\n")


def format_hits(hits: Sequence[MatchHit], sep: str = ",") -> str:
    """Render hits as ``pattern_id<sep>end_position`` lines."""
    return "".join(f"{h.pattern_id}{sep}{h.end_pos}\n" for h in hits)


ALGORITHMS = ("wmp", "wmb", "wmbm", "rk", "asb", "asp", "naive")

_ALGO_ENCODING = {
    "wmp": "pd",
    "wmb": "bin",
    "wmbm": "bin",
    "rk": "bin",
    "asb": "bin",
    "asp": "pd",
    "naive": None,
}

_BLOCK_ALGOS = ("wmp", "wmb", "wmbm", "asb", "asp")


@dataclass(frozen=True)
class SearchOptions:
    """Knobs accepted by ``run_search``; the defaults never conflict.

    ``modulus``: "auto" picks exact fingerprints when they fit a 64-bit
    word and the default prime otherwise; "exact" forces exact mode; an
    integer is used as the (prime) modulus.  ``block``: "auto" derives the
    block size from the pattern count and shortest length.
    """

    encoding: Optional[str] = None
    modulus: Union[str, int] = "auto"
    block: Union[str, int] = "auto"
    min_index_filter: bool = False


@dataclass
class SearchResult:
    algorithm: str
    hits: list[MatchHit]
    preprocess_ms: float
    search_ms: float
    encoding: Optional[str]
    modulus: Optional[int]  # None means exact
    block: Optional[int]
    min_index_filter: bool

    @property
    def total_ms(self) -> float:
        return self.preprocess_ms + self.search_ms


def _exact_fits(encoding: str, window: int) -> bool:
    if encoding == "bin":
        return window - 1 <= BINARY_EXACT_MAX_BITS
    return window <= PD_EXACT_MAX_LEN


def run_search(
    text: Sequence[int],
    patterns: Sequence[Sequence[int]],
    algo: str,
    options: SearchOptions = SearchOptions(),
) -> SearchResult:
    """Dispatch one search, timing preprocessing and scanning separately.

    Incompatible combinations (an encoding that contradicts the algorithm
    tag, min-index filtering without the binary encoding, block or modulus
    options for algorithms that take none) fail before any work is done.
    """
    if algo not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algo!r}")
    if not patterns:
        raise InputError("pattern list is empty")

    encoding = _ALGO_ENCODING[algo]
    if options.encoding is not None and options.encoding != encoding:
        raise ConfigurationError(
            f"algorithm {algo!r} implies encoding {encoding!r}, "
            f"got {options.encoding!r}"
        )
    min_index_filter = options.min_index_filter or algo == "wmbm"
    if min_index_filter and algo not in ("wmb", "wmbm"):
        raise ConfigurationError(
            f"min-index filtering is not available for {algo!r}"
        )

    uses_block = algo in _BLOCK_ALGOS
    if not uses_block and options.block != "auto":
        raise ConfigurationError(f"algorithm {algo!r} takes no block size")
    if algo == "naive" and (options.modulus != "auto" or min_index_filter):
        raise ConfigurationError("the brute-force baseline takes no options")

    m = min(len(p) for p in patterns)
    k = len(patterns)

    block: Optional[int] = None
    if uses_block:
        if options.block == "auto":
            block = choose_block_size(k, m)
        else:
            block = int(options.block)

    modulus: Optional[int] = None
    if algo != "naive":
        window = block if uses_block else m
        if options.modulus == "auto":
            modulus = None if _exact_fits(encoding, window) else DEFAULT_MODULUS
        elif options.modulus == "exact":
            modulus = None
        else:
            modulus = int(options.modulus)

    t0 = time.perf_counter()
    pps = prepare_patterns(patterns, block)
    if algo == "naive":
        t1 = time.perf_counter()
        hits = naive_search(text, pps)
        t2 = time.perf_counter()
        return SearchResult(algo, hits, (t1 - t0) * 1e3, (t2 - t1) * 1e3,
                            None, None, None, False)

    kind = EncodingKind.BINARY if encoding == "bin" else EncodingKind.PARENT_DISTANCE
    cfg = FingerprintConfig(kind, modulus)
    if algo in ("wmp", "wmb", "wmbm"):
        tables = wm_preprocess(pps, cfg)
        t1 = time.perf_counter()
        hits = wm_search(text, tables, pps, min_index_filter=min_index_filter)
    elif algo == "rk":
        tables = rk_preprocess(pps, cfg)
        t1 = time.perf_counter()
        hits = rk_search(text, tables, pps)
    else:
        tables = as_preprocess(pps, cfg)
        t1 = time.perf_counter()
        hits = as_search(text, tables, pps)
    t2 = time.perf_counter()
    return SearchResult(algo, hits, (t1 - t0) * 1e3, (t2 - t1) * 1e3,
                        encoding, modulus, block, min_index_filter)


BENCH_CSV_HEADER = [
    "algorithm",
    "k",
    "length_spec",
    "encoding",
    "min_index_filter",
    "modulus",
    "block",
    "preprocess_ms",
    "search_ms",
    "total_ms",
    "hit_count",
    "reps",
]


@dataclass
class BenchRecord:
    """One benchmark cell; times are means over ``reps`` runs."""

    algorithm: str
    k: int
    length_spec: str
    encoding: str
    min_index_filter: bool
    modulus: str
    block: str
    preprocess_ms: float
    search_ms: float
    total_ms: float
    hit_count: int
    reps: int


@dataclass
class BenchConfig:
    text: list[int]
    algos: list[str]
    k_values: list[int]
    length_specs: list[LengthSpec]
    reps: int
    seed: int
    options: SearchOptions = SearchOptions()


def bench(config: BenchConfig) -> list[BenchRecord]:
    """Benchmark every (k, length spec, algorithm) cell.

    Patterns for a cell are extracted once with a per-cell child seed and
    shared by all algorithms, so hit counts within a cell agree across
    algorithms.  Times are means over ``config.reps`` runs of a single-
    threaded search.
    """
    if config.reps < 1:
        raise ConfigurationError("reps must be >= 1")
    records = []
    cell = 0
    for k in config.k_values:
        for spec in config.length_specs:
            patterns = extract_patterns(
                config.text, k, spec, _substream_seed(config.seed, cell)
            )
            cell += 1
            for algo in config.algos:
                pre = search = 0.0
                hit_count = None
                for _ in range(config.reps):
                    res = run_search(config.text, patterns, algo, config.options)
                    pre += res.preprocess_ms
                    search += res.search_ms
                    if hit_count is None:
                        hit_count = len(res.hits)
                pre /= config.reps
                search /= config.reps
                records.append(
                    BenchRecord(
                        algorithm=algo,
                        k=k,
                        length_spec=spec.label(),
                        encoding=res.encoding or "none",
                        min_index_filter=res.min_index_filter,
                        modulus="exact" if res.modulus is None else str(res.modulus),
                        block="none" if res.block is None else str(res.block),
                        preprocess_ms=pre,
                        search_ms=search,
                        total_ms=pre + search,
                        hit_count=hit_count,
                        reps=config.reps,
                    )
                )
    return records


def write_bench_csv(records: Sequence[BenchRecord], fh: IO[str]) -> None:
    writer = csv.writer(fh)
    writer.writerow(BENCH_CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.algorithm,
                r.k,
                r.length_spec,
                r.encoding,
                r.min_index_filter,
                r.modulus,
                r.block,
                repr(r.preprocess_ms),
                repr(r.search_ms),
                repr(r.total_ms),
                r.hit_count,
                r.reps,
            ]
        )


def read_bench_csv(fh: IO[str]) -> list[BenchRecord]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != BENCH_CSV_HEADER:
        raise InputError("not a benchmark CSV (unexpected header)")
    out = []
    for row in reader:
        out.append(
            BenchRecord(
                algorithm=row[0],
                k=int(row[1]),
                length_spec=row[2],
                encoding=row[3],
                min_index_filter=row[4] == "True",
                modulus=row[5],
                block=row[6],
                preprocess_ms=float(row[7]),
                search_ms=float(row[8]),
                total_ms=float(row[9]),
                hit_count=int(row[10]),
                reps=int(row[11]),
            )
        )
    return out
