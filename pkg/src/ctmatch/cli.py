"""Command-line front end.

Subcommands: ``gen`` (random corpus), ``extract`` (cut patterns out of a
text), ``search`` (run one matcher and print hits), ``bench`` (timing CSV,
optionally with figures), ``analyze`` (exact match-probability table and
bound check, or a Monte Carlo estimate).

Exit codes: 0 success, 1 input/parse error, 2 configuration error (bad
usage counts as configuration).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .analysis import check_probability_bound, empirical_match_rate, match_probability, probability_table
from .errors import ConfigurationError, InputError
from .harness import (
    ALGORITHMS,
    BenchConfig,
    LengthSpec,
    SearchOptions,
    bench,
    extract_patterns,
    format_hits,
    generate,
    load_patterns,
    load_sequence,
    run_search,
    write_bench_csv,
    write_patterns,
    write_sequence,
)


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_out(path: Optional[str], payload_writer) -> None:
    fh, close = _open_out(path)
    try:
        payload_writer(fh)
    finally:
        if close:
            fh.close()


def _load_text(args) -> list[int]:
    fmt = "csv" if args.column else "plain"
    return load_sequence(args.text, fmt=fmt, column=args.column)


def cmd_gen(args) -> int:
    seq = generate(args.length, args.alphabet, args.seed)
    _write_out(args.out, lambda fh: write_sequence(seq, fh))
    return 0


def _length_spec_from_args(args) -> LengthSpec:
    if args.length is not None and args.interval is not None:
        raise ConfigurationError("give either --length or --interval, not both")
    if args.length is not None:
        return LengthSpec.fixed(args.length)
    if args.interval is not None:
        lo, hi = args.interval
        return LengthSpec.interval(lo, hi)
    raise ConfigurationError("one of --length or --interval is required")


def cmd_extract(args) -> int:
    text = _load_text(args)
    spec = _length_spec_from_args(args)
    patterns = extract_patterns(text, args.k, spec, args.seed)
    _write_out(args.out, lambda fh: write_patterns(patterns, fh))
    return 0


def _parse_modulus(value: str):
    if value in ("auto", "exact"):
        return value
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigurationError(f"--modulus must be an integer or 'exact', got {value!r}") from exc


def _parse_block(value: str):
    if value == "auto":
        return value
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigurationError(f"--block must be an integer or 'auto', got {value!r}") from exc


def cmd_search(args) -> int:
    options = SearchOptions(
        encoding=args.encoding,
        modulus=_parse_modulus(args.modulus),
        block=_parse_block(args.block),
        min_index_filter=args.min_index_filter,
    )
    text = _load_text(args)
    patterns = load_patterns(args.patterns)
    result = run_search(text, patterns, args.algo, options)
    sep = "\t" if args.format == "tsv" else ","
    _write_out(args.out, lambda fh: fh.write(format_hits(result.hits, sep)))
    if args.time:
        print(
            f"preprocess_ms={result.preprocess_ms:.3f} "
            f"search_ms={result.search_ms:.3f} "
            f"total_ms={result.total_ms:.3f} hits={len(result.hits)}",
            file=sys.stderr,
        )
    return 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise ConfigurationError(f"{flag} expects comma-separated integers") from exc


def _parse_intervals(text: str) -> list[LengthSpec]:
    specs = []
    for part in text.split(","):
        if not part:
            continue
        try:
            lo, hi = part.split(":")
            specs.append(LengthSpec.interval(int(lo), int(hi)))
        except ValueError as exc:
            raise ConfigurationError(
                f"--intervals expects LO:HI pairs, got {part!r}"
            ) from exc
    return specs


def cmd_bench(args) -> int:
    if args.text:
        text = _load_text(args)
    elif args.length is not None:
        text = generate(args.length, args.alphabet, args.seed)
    else:
        raise ConfigurationError("bench needs --text or --length/--alphabet")
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {a!r}")
    specs: list[LengthSpec] = []
    if args.lengths:
        specs.extend(LengthSpec.fixed(m) for m in _parse_int_list(args.lengths, "--lengths"))
    if args.intervals:
        specs.extend(_parse_intervals(args.intervals))
    if not specs:
        raise ConfigurationError("bench needs --lengths and/or --intervals")
    config = BenchConfig(
        text=text,
        algos=algos,
        k_values=_parse_int_list(args.k, "--k"),
        length_specs=specs,
        reps=args.reps,
        seed=args.seed,
        options=SearchOptions(
            modulus=_parse_modulus(args.modulus), block=_parse_block(args.block)
        ),
    )
    records = bench(config)
    _write_out(args.out, lambda fh: write_bench_csv(records, fh))
    if args.plot_dir:
        from .plots import render_bench_figures

        paths = render_bench_figures(records, args.plot_dir)
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    if args.montecarlo is not None:
        n = args.montecarlo
        freq = empirical_match_rate(n, args.trials, args.seed)
        exact = float(match_probability(n))
        _write_out(
            args.out,
            lambda fh: fh.write(
                "n,trials,frequency,exact_probability\n"
                f"{n},{args.trials},{freq!r},{exact!r}\n"
            ),
        )
        return 0
    table = probability_table(args.max_n)
    checks = {c.n: c for c in check_probability_bound(args.max_n)} if args.max_n >= 1 else {}

    def write(fh):
        fh.write("n,p_numerator,p_denominator,bound_holds\n")
        for n in range(args.max_n + 1):
            holds = checks[n].holds if n in checks else True
            p = table.p[n]
            fh.write(f"{n},{p.numerator},{p.denominator},{str(holds).lower()}\n")

    _write_out(args.out, write)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctmatch",
        description="Multiple-pattern Cartesian tree matching toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random integer corpus")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("extract", help="extract random patterns from a text")
    p.add_argument("--text", required=True)
    p.add_argument("--column", default=None, help="read CSV input, this column")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--length", type=int, default=None, help="fixed pattern length")
    p.add_argument("--interval", type=int, nargs=2, metavar=("LO", "HI"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("search", help="report all pattern matches in a text")
    p.add_argument("--text", required=True)
    p.add_argument("--column", default=None, help="read CSV input, this column")
    p.add_argument("--patterns", required=True)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--encoding", choices=("pd", "bin"), default=None)
    p.add_argument("--modulus", default="auto", help="N | exact | auto")
    p.add_argument("--block", default="auto", help="N | auto")
    p.add_argument("--min-index-filter", action="store_true")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument("--time", action="store_true", help="print timings to stderr")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="benchmark algorithms, emit CSV")
    p.add_argument("--text", default=None)
    p.add_argument("--column", default=None)
    p.add_argument("--length", type=int, default=None, help="generate a corpus of this length")
    p.add_argument("--alphabet", type=int, default=1000)
    p.add_argument("--algos", default="wmp,wmb,wmbm,rk,asb", help="comma-separated")
    p.add_argument("--k", default="10", help="comma-separated pattern counts")
    p.add_argument("--lengths", default=None, help="comma-separated fixed lengths")
    p.add_argument("--intervals", default=None, help="comma-separated LO:HI pairs")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--modulus", default="auto")
    p.add_argument("--block", default="auto")
    p.add_argument("--plot-dir", default=None, help="also render figures here")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("analyze", help="match-probability table and bound check")
    p.add_argument("--max-n", type=int, default=30)
    p.add_argument("--montecarlo", type=int, default=None, metavar="N",
                   help="estimate the rate empirically for length N instead")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
