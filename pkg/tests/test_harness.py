import io

import pytest

from ctmatch.errors import ConfigurationError, InputError
from ctmatch.harness import (
    ALGORITHMS,
    BENCH_CSV_HEADER,
    BenchConfig,
    LengthSpec,
    SearchOptions,
    SplitMix64,
    bench,
    extract_patterns,
    format_hits,
    generate,
    load_patterns,
    load_sequence,
    read_bench_csv,
    run_search,
    write_bench_csv,
    write_patterns,
    write_sequence,
)

EXAMPLE_TEXT = [6, 1, 5, 3, 6, 5, 7, 4, 2, 3, 1]
EXAMPLE_PATTERN = [1, 4, 3, 4, 1]


# ---- file I/O ----

def test_load_plain_whitespace_separated(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("6 1 5 3 6 5 7 4 2 3 1")
    assert load_sequence(str(path)) == EXAMPLE_TEXT


def test_load_plain_single_value(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("42")
    assert load_sequence(str(path)) == [42]


def test_load_plain_reports_line_number(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("1 2\n3 x 4\n")
    with pytest.raises(InputError, match=r":2:"):
        load_sequence(str(path))


def test_load_plain_empty_rejected(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("")
    with pytest.raises(InputError, match="empty"):
        load_sequence(str(path))


def test_load_csv_column(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("stamp,temp\n1,15\n2,-3\n3,0\n4,221\n5,9\n")
    assert load_sequence(str(path), fmt="csv", column="temp") == [15, -3, 0, 221, 9]


def test_load_csv_missing_column(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(InputError, match="no column"):
        load_sequence(str(path), fmt="csv", column="temp")


def test_load_csv_bad_value_reports_line(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("temp\n5\noops\n")
    with pytest.raises(InputError, match=r":3:"):
        load_sequence(str(path), fmt="csv", column="temp")


def test_load_unknown_format():
    with pytest.raises(ConfigurationError):
        load_sequence("whatever", fmt="jsonl")


def test_sequence_write_load_round_trip(tmp_path):
    seq = generate(500, 37, 5)
    path = tmp_path / "seq.txt"
    with open(path, "w") as fh:
        write_sequence(seq, fh)
    assert load_sequence(str(path)) == seq


def test_pattern_write_load_round_trip(tmp_path):
    patterns = [[1, 2, 3], [9], [-4, 0, 4, 8]]
    path = tmp_path / "p.txt"
    with open(path, "w") as fh:
        write_patterns(patterns, fh)
    assert load_patterns(str(path)) == patterns


def test_load_patterns_rejects_garbage(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("1 2 zoo\n")
    with pytest.raises(InputError):
        load_patterns(str(path))
    path.write_text("\n\n")
    with pytest.raises(InputError, match="no patterns"):
        load_patterns(str(path))


# ---- generation ----

def test_generate_empty():
    assert generate(0, 5, 1) == []


def test_generate_deterministic():
    a = generate(1000, 1000, 123)
    b = generate(1000, 1000, 123)
    assert a == b
    assert a != generate(1000, 1000, 124)


def test_generate_matches_scalar_stream():
    rng = SplitMix64(99)
    assert generate(200, 37, 99) == [rng.below(37) for _ in range(200)]


def test_generate_range():
    seq = generate(5000, 7, 0)
    assert min(seq) >= 0 and max(seq) < 7
    assert set(seq) == set(range(7))


def test_generate_uniform_chi_squared():
    from scipy.stats import chi2

    sigma = 1000
    seq = generate(100_000, sigma, 7)
    counts = [0] * sigma
    for v in seq:
        counts[v] += 1
    expected = len(seq) / sigma
    stat = sum((c - expected) ** 2 / expected for c in counts)
    assert stat < chi2.ppf(0.999, sigma - 1)


def test_generate_validates():
    with pytest.raises(InputError):
        generate(-1, 5, 0)
    with pytest.raises(InputError):
        generate(5, 0, 0)


# ---- extraction ----

def test_extract_whole_text():
    text = generate(50, 9, 3)
    pats = extract_patterns(text, 1, LengthSpec.fixed(50), 0)
    assert pats == [text]


def test_extract_patterns_are_substrings():
    text = generate(300, 11, 8)
    pats = extract_patterns(text, 10, LengthSpec.fixed(16), 4)
    assert len(pats) == 10
    joined = ",".join(map(str, text))
    for p in pats:
        assert len(p) == 16
        assert ",".join(map(str, p)) in joined


def test_extract_interval_lengths_in_bounds():
    text = generate(200, 5, 1)
    pats = extract_patterns(text, 40, LengthSpec.interval(8, 32), 2)
    assert all(8 <= len(p) <= 32 for p in pats)
    assert len({len(p) for p in pats}) > 1  # lengths actually vary


def test_extract_deterministic():
    text = generate(100, 4, 6)
    a = extract_patterns(text, 5, LengthSpec.interval(2, 9), 77)
    b = extract_patterns(text, 5, LengthSpec.interval(2, 9), 77)
    assert a == b


def test_extract_validates():
    text = generate(10, 4, 0)
    with pytest.raises(InputError):
        extract_patterns(text, 1, LengthSpec.fixed(11), 0)
    with pytest.raises(InputError):
        extract_patterns(text, 0, LengthSpec.fixed(2), 0)
    with pytest.raises(InputError):
        LengthSpec.interval(5, 3)
    with pytest.raises(InputError):
        LengthSpec.fixed(0)


def test_length_spec_labels_round_trip():
    for spec in (LengthSpec.fixed(16), LengthSpec.interval(8, 32)):
        assert LengthSpec.parse(spec.label()) == spec
    assert LengthSpec.parse("64") == LengthSpec.fixed(64)
    with pytest.raises(InputError):
        LengthSpec.parse("m=?")


# ---- search dispatch ----

def test_run_search_worked_example_all_algorithms():
    for algo in ALGORITHMS:
        res = run_search(EXAMPLE_TEXT, [EXAMPLE_PATTERN], algo)
        assert res.hits == [(1, 8)], algo
        assert res.preprocess_ms >= 0 and res.search_ms >= 0
        assert res.total_ms == res.preprocess_ms + res.search_ms


def test_run_search_hit_sets_agree_on_random_instance():
    text = generate(800, 10, 2)
    patterns = extract_patterns(text, 10, LengthSpec.interval(2, 12), 3)
    reference = run_search(text, patterns, "naive").hits
    for algo in ALGORITHMS:
        assert run_search(text, patterns, algo).hits == reference, algo


@pytest.mark.parametrize(
    "algo, options",
    [
        ("rk", SearchOptions(encoding="pd")),
        ("wmbm", SearchOptions(encoding="pd")),
        ("wmp", SearchOptions(min_index_filter=True)),
        ("asb", SearchOptions(min_index_filter=True)),
        ("rk", SearchOptions(block=4)),
        ("naive", SearchOptions(modulus=97)),
        ("naive", SearchOptions(encoding="bin")),
        ("wmb", SearchOptions(modulus=10)),  # not prime
        ("nope", SearchOptions()),
    ],
)
def test_run_search_rejects_incompatible_options(algo, options):
    with pytest.raises(ConfigurationError):
        run_search(EXAMPLE_TEXT, [EXAMPLE_PATTERN], algo, options)


def test_run_search_explicit_options_respected():
    text = generate(300, 6, 9)
    patterns = extract_patterns(text, 3, LengthSpec.fixed(8), 1)
    res = run_search(text, patterns, "wmb", SearchOptions(modulus=8191, block=4))
    assert res.modulus == 8191 and res.block == 4
    assert res.hits == run_search(text, patterns, "naive").hits
    res = run_search(text, patterns, "wmp", SearchOptions(modulus="exact"))
    assert res.modulus is None
    res = run_search(text, patterns, "wmbm")
    assert res.min_index_filter is True


def test_run_search_auto_modulus_falls_back_for_long_prefixes():
    # rk with m - 1 > 64 bits cannot stay exact
    text = generate(400, 50, 4)
    patterns = extract_patterns(text, 2, LengthSpec.fixed(100), 5)
    res = run_search(text, patterns, "rk")
    assert res.modulus is not None
    assert res.hits == run_search(text, patterns, "naive").hits


def test_format_hits():
    hits = run_search(EXAMPLE_TEXT, [EXAMPLE_PATTERN], "wmb").hits
    assert format_hits(hits) == "1,8\n"
    assert format_hits(hits, sep="\t") == "1\t8\n"


# ---- benchmarking ----

def test_bench_single_cell():
    text = generate(400, 20, 1)
    config = BenchConfig(
        text=text,
        algos=["wmb"],
        k_values=[3],
        length_specs=[LengthSpec.fixed(8)],
        reps=3,
        seed=5,
    )
    records = bench(config)
    assert len(records) == 1
    r = records[0]
    assert r.algorithm == "wmb" and r.k == 3 and r.length_spec == "m=8"
    assert r.reps == 3
    assert r.total_ms == pytest.approx(r.preprocess_ms + r.search_ms)
    assert r.encoding == "bin" and r.modulus == "exact"


def test_bench_hit_counts_agree_across_algorithms():
    text = generate(600, 8, 2)
    config = BenchConfig(
        text=text,
        algos=["naive", "wmp", "wmb", "wmbm", "rk", "asb", "asp"],
        k_values=[4],
        length_specs=[LengthSpec.fixed(6), LengthSpec.interval(2, 9)],
        reps=1,
        seed=3,
    )
    records = bench(config)
    assert len(records) == 14
    for spec in ("m=6", "[2,9]"):
        counts = {r.hit_count for r in records if r.length_spec == spec}
        assert len(counts) == 1


def test_bench_csv_round_trip():
    text = generate(300, 10, 7)
    config = BenchConfig(
        text=text,
        algos=["wmb", "rk", "naive"],
        k_values=[2, 5],
        length_specs=[LengthSpec.fixed(4), LengthSpec.interval(3, 7)],
        reps=2,
        seed=9,
    )
    records = bench(config)
    buf = io.StringIO()
    write_bench_csv(records, buf)
    buf.seek(0)
    assert read_bench_csv(buf) == records


def test_bench_csv_header_fixed():
    buf = io.StringIO()
    write_bench_csv([], buf)
    assert buf.getvalue().strip() == ",".join(BENCH_CSV_HEADER)
    buf = io.StringIO("algorithm,oops\nx,1\n")
    with pytest.raises(InputError):
        read_bench_csv(buf)


def test_bench_hit_counts_deterministic_across_runs():
    text = generate(400, 5, 13)
    config = BenchConfig(
        text=text,
        algos=["wmb", "naive"],
        k_values=[3],
        length_specs=[LengthSpec.interval(2, 8)],
        reps=1,
        seed=21,
    )
    first = [(r.algorithm, r.hit_count) for r in bench(config)]
    second = [(r.algorithm, r.hit_count) for r in bench(config)]
    assert first == second


def test_bench_validates_reps():
    with pytest.raises(ConfigurationError):
        bench(
            BenchConfig(
                text=[1, 2, 3],
                algos=["wmb"],
                k_values=[1],
                length_specs=[LengthSpec.fixed(2)],
                reps=0,
                seed=0,
            )
        )


# ---- figures ----

def test_bench_figures_rendered(tmp_path):
    from ctmatch.plots import render_bench_figures

    text = generate(300, 10, 7)
    config = BenchConfig(
        text=text,
        algos=["wmb", "asb"],
        k_values=[2, 4],
        length_specs=[LengthSpec.fixed(4), LengthSpec.fixed(8)],
        reps=1,
        seed=9,
    )
    records = bench(config)
    paths = render_bench_figures(records, tmp_path / "figs")
    assert [p.name for p in paths] == ["bench_k2.png", "bench_k4.png"]
    for p in paths:
        assert p.stat().st_size > 0
