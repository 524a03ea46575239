import subprocess
import sys

import pytest

from ctmatch.cli import main

EXAMPLE_TEXT = "6 1 5 3 6 5 7 4 2 3 1"
EXAMPLE_PATTERN = "1 4 3 4 1"


@pytest.fixture
def example_files(tmp_path):
    text = tmp_path / "text.txt"
    text.write_text(EXAMPLE_TEXT)
    patterns = tmp_path / "patterns.txt"
    patterns.write_text(EXAMPLE_PATTERN + "\n")
    return str(text), str(patterns)


def test_search_prints_hit(example_files, capsys):
    text, patterns = example_files
    assert main(["search", "--text", text, "--patterns", patterns, "--algo", "wmb"]) == 0
    assert capsys.readouterr().out == "1,8\n"


@pytest.mark.parametrize("algo", ["wmp", "wmb", "wmbm", "rk", "asb", "asp", "naive"])
def test_search_all_algorithms_agree(example_files, capsys, algo):
    text, patterns = example_files
    assert main(["search", "--text", text, "--patterns", patterns, "--algo", algo]) == 0
    assert capsys.readouterr().out == "1,8\n"


def test_search_tsv_format(example_files, capsys):
    text, patterns = example_files
    assert main(
        ["search", "--text", text, "--patterns", patterns, "--algo", "rk",
         "--format", "tsv"]
    ) == 0
    assert capsys.readouterr().out == "1\t8\n"


def test_search_csv_input_column(tmp_path, capsys):
    text = tmp_path / "text.csv"
    text.write_text("hour,temp\n" + "".join(
        f"{i},{v}\n" for i, v in enumerate(EXAMPLE_TEXT.split())
    ))
    patterns = tmp_path / "patterns.txt"
    patterns.write_text(EXAMPLE_PATTERN + "\n")
    assert main(
        ["search", "--text", str(text), "--column", "temp",
         "--patterns", str(patterns), "--algo", "wmb"]
    ) == 0
    assert capsys.readouterr().out == "1,8\n"


def test_search_incompatible_options_exit_2(example_files, capsys):
    text, patterns = example_files
    assert main(
        ["search", "--text", text, "--patterns", patterns, "--algo", "rk",
         "--encoding", "pd"]
    ) == 2
    assert "error:" in capsys.readouterr().err


def test_search_missing_file_exit_1(tmp_path, capsys):
    patterns = tmp_path / "p.txt"
    patterns.write_text("1 2\n")
    assert main(
        ["search", "--text", str(tmp_path / "absent.txt"),
         "--patterns", str(patterns), "--algo", "wmb"]
    ) == 1


def test_search_parse_error_exit_1(tmp_path, capsys):
    text = tmp_path / "t.txt"
    text.write_text("1 2 frog 4")
    patterns = tmp_path / "p.txt"
    patterns.write_text("1 2\n")
    assert main(
        ["search", "--text", str(text), "--patterns", str(patterns),
         "--algo", "wmb"]
    ) == 1
    assert "frog" in capsys.readouterr().err


def test_gen_deterministic_bytes(tmp_path):
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    args = ["gen", "--length", "500", "--alphabet", "100", "--seed", "9"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert len(out1.read_text().split()) == 500


def test_extract_deterministic_bytes(tmp_path):
    text = tmp_path / "t.txt"
    assert main(["gen", "--length", "200", "--alphabet", "50", "--seed", "1",
                 "--out", str(text)]) == 0
    outs = []
    for name in ("p1.txt", "p2.txt"):
        out = tmp_path / name
        assert main(["extract", "--text", str(text), "--k", "4",
                     "--interval", "3", "9", "--seed", "5", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_search_deterministic_bytes(tmp_path):
    text = tmp_path / "t.txt"
    patterns = tmp_path / "p.txt"
    main(["gen", "--length", "400", "--alphabet", "10", "--seed", "2",
          "--out", str(text)])
    main(["extract", "--text", str(text), "--k", "5", "--length", "4",
          "--seed", "3", "--out", str(patterns)])
    outs = []
    for name in ("h1.txt", "h2.txt"):
        out = tmp_path / name
        assert main(["search", "--text", str(text), "--patterns", str(patterns),
                     "--algo", "asb", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    naive_out = tmp_path / "naive.txt"
    main(["search", "--text", str(text), "--patterns", str(patterns),
          "--algo", "naive", "--out", str(naive_out)])
    assert naive_out.read_bytes() == outs[0]


def test_extract_requires_some_length_spec(tmp_path, capsys):
    text = tmp_path / "t.txt"
    text.write_text("1 2 3 4 5")
    assert main(["extract", "--text", str(text), "--k", "1", "--seed", "0"]) == 2


def test_analyze_table_output(capsys):
    assert main(["analyze", "--max-n", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == [
        "n,p_numerator,p_denominator,bound_holds",
        "0,1,1,true",
        "1,1,1,true",
        "2,1,2,true",
        "3,2,9,true",
    ]


def test_analyze_montecarlo(capsys):
    assert main(["analyze", "--montecarlo", "2", "--trials", "20000",
                 "--seed", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,trials,frequency,exact_probability"
    n, trials, freq, exact = lines[1].split(",")
    assert (n, trials) == ("2", "20000")
    assert abs(float(freq) - 0.5) < 0.02
    assert float(exact) == 0.5


def test_bench_csv_and_plots(tmp_path):
    out = tmp_path / "bench.csv"
    figs = tmp_path / "figs"
    assert main(
        ["bench", "--length", "400", "--alphabet", "100", "--seed", "3",
         "--algos", "wmb,rk", "--k", "2", "--lengths", "4,8",
         "--reps", "2", "--out", str(out), "--plot-dir", str(figs)]
    ) == 0
    from ctmatch.harness import read_bench_csv

    with open(out) as fh:
        records = read_bench_csv(fh)
    assert len(records) == 4
    assert (figs / "bench_k2.png").exists()


def test_bench_requires_corpus(capsys):
    assert main(["bench", "--algos", "wmb", "--k", "1", "--lengths", "4"]) == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "ctmatch.cli", "analyze", "--max-n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,p_numerator")
