"""Probability that two random same-length sequences share a Cartesian tree.

Model: values are i.i.d. with no ties, so each of the two sequences places
its minimum uniformly at random.  Conditioning on both minima landing at the
same position i gives the recurrence

    p(0) = p(1) = 1
    p(n) = sum_{i=1..n} p(i-1) * p(n-i) / n**2

which is evaluated in exact rational arithmetic so the upper bound
``p(n) <= 1 / 2**(n-1)`` can be decided without floating point.  A Monte
Carlo estimator over random permutation pairs validates the model
empirically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .representations import parent_distance

__all__ = [
    "ProbabilityTable",
    "BoundCheck",
    "probability_table",
    "match_probability",
    "check_probability_bound",
    "empirical_match_rate",
]

# Permutation -> parent-distance class lookups are memoized up to this length
# to keep million-trial Monte Carlo runs fast.
_MEMO_MAX_N = 8
_pd_class_cache: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = {}


@dataclass(frozen=True)
class ProbabilityTable:
    """Exact match probabilities ``p[0] .. p[N]``."""

    p: list[Fraction]

    def __getitem__(self, n: int) -> Fraction:
        return self.p[n]

    def __len__(self) -> int:
        return len(self.p)


class BoundCheck(NamedTuple):
    n: int
    probability: Fraction
    bound: Fraction
    holds: bool


def probability_table(max_n: int) -> ProbabilityTable:
    """Evaluate the recurrence for all n in ``0 .. max_n``.

    O(max_n**2) exact rational operations.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    p: list[Fraction] = []
    for n in range(max_n + 1):
        if n <= 1:
            p.append(Fraction(1))
        else:
            total = sum(p[i] * p[n - 1 - i] for i in range(n))
            p.append(total / (n * n))
    return ProbabilityTable(p)


def match_probability(n: int) -> Fraction:
    """Exact probability that two random length-n sequences of distinct
    values have equal Cartesian trees."""
    return probability_table(n).p[n]


def check_probability_bound(max_n: int) -> list[BoundCheck]:
    """Compare p(n) against the upper bound 1 / 2**(n-1) for n in 1..max_n.

    The comparison is exact; every entry is expected to hold.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    table = probability_table(max_n)
    out = []
    for n in range(1, max_n + 1):
        bound = Fraction(1, 2 ** (n - 1))
        out.append(BoundCheck(n, table.p[n], bound, table.p[n] <= bound))
    return out


def _pd_classes(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map every permutation of 0..n-1 to its parent-distance class."""
    cached = _pd_class_cache.get(n)
    if cached is None:
        cached = {
            perm: tuple(parent_distance(perm))
            for perm in itertools.permutations(range(n))
        }
        _pd_class_cache[n] = cached
    return cached


def empirical_match_rate(n: int, trials: int, seed: int) -> float:
    """Frequency of equal Cartesian trees over random permutation pairs.

    Draws ``trials`` pairs of uniformly random permutations of n distinct
    values and counts equality of their parent-distance representations.
    Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    shuffle = rng.shuffle
    a = list(range(n))
    b = list(range(n))
    matches = 0
    if n <= _MEMO_MAX_N:
        classes = _pd_classes(n)
        for _ in range(trials):
            shuffle(a)
            shuffle(b)
            if classes[tuple(a)] == classes[tuple(b)]:
                matches += 1
    else:
        for _ in range(trials):
            shuffle(a)
            shuffle(b)
            if parent_distance(a) == parent_distance(b):
                matches += 1
    return matches / trials
