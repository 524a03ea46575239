"""Render benchmark figures to image files.

The delimited benchmark output is the primary artifact; these figures are a
downstream convenience rendered from the same records.  One figure per
pattern count: mean total time against the length spec, one line per
algorithm, log-scaled time axis.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import BenchRecord, LengthSpec

__all__ = ["render_bench_figures"]


def render_bench_figures(
    records: Sequence[BenchRecord], outdir: Union[str, Path]
) -> list[Path]:
    """Write one ``bench_k<k>.png`` per pattern count; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    k_values = sorted({r.k for r in records})
    paths = []
    for k in k_values:
        rows = [r for r in records if r.k == k]
        specs: list[str] = []
        for r in rows:
            if r.length_spec not in specs:
                specs.append(r.length_spec)
        specs.sort(key=lambda s: LengthSpec.parse(s).lo)
        xpos = {s: i for i, s in enumerate(specs)}
        fig, ax = plt.subplots(figsize=(6, 4))
        algos = []
        for r in rows:
            if r.algorithm not in algos:
                algos.append(r.algorithm)
        for algo in algos:
            pts = sorted(
                ((xpos[r.length_spec], r.total_ms) for r in rows if r.algorithm == algo)
            )
            ax.plot(
                [p[0] for p in pts],
                [p[1] for p in pts],
                marker="o",
                label=algo,
            )
        ax.set_xticks(range(len(specs)))
        ax.set_xticklabels(specs)
        ax.set_yscale("log")
        ax.set_xlabel("pattern length")
        ax.set_ylabel("mean total time (ms)")
        ax.set_title(f"k = {k}")
        ax.legend()
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        path = outdir / f"bench_k{k}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
