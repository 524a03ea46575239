"""Structural representations of integer sequences.

A Cartesian tree of a sequence has the leftmost minimum as its root and the
Cartesian trees of the left/right remainders as subtrees; in-order traversal
recovers the original positions.  Two derived string forms are provided:

* parent-distance: for each position, the distance back to the nearest
  earlier element that is <= the current one (0 if none).  This is in
  one-to-one correspondence with the Cartesian tree.
* binary: one bit per adjacent pair, set when s[i] <= s[i+1].  Equal
  Cartesian trees force equal bit strings, but not conversely.

The global-parent form stores, per position, the index of its parent in the
full tree (root points to itself) and supports verifying a candidate window
against a pattern without computing any representation of the window.

All positions crossing the API are 1-based.  Every function is pure and the
returned objects are never mutated afterwards, so results can be shared
freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "CartesianTree",
    "build_cartesian_tree",
    "parent_distance",
    "binary_representation",
    "global_parent",
    "verify_match",
    "min_index",
]


@dataclass
class CartesianTree:
    """Cartesian tree given as per-position arrays of 1-based indices.

    ``parent[i-1]`` is the parent of position ``i`` (the root is its own
    parent); ``left``/``right`` hold child positions or ``None``.
    """

    parent: list[int]
    left: list[Optional[int]]
    right: list[Optional[int]]
    root: Optional[int]

    def __len__(self) -> int:
        return len(self.parent)


def build_cartesian_tree(s: Sequence[int]) -> CartesianTree:
    """Build the Cartesian tree of ``s`` with the leftmost-minimum tie-break.

    Single left-to-right pass over the right spine kept on a stack; ties are
    broken by popping only on strict ``>`` so an equal value always attaches
    to the right of the earlier one.  Linear time.
    """
    n = len(s)
    parent = [0] * n
    left: list[Optional[int]] = [None] * n
    right: list[Optional[int]] = [None] * n
    stack: list[int] = []
    for i in range(n):
        v = s[i]
        last = None
        while stack and s[stack[-1]] > v:
            last = stack.pop()
        if last is not None:
            left[i] = last + 1
            parent[last] = i + 1
        if stack:
            parent[i] = stack[-1] + 1
            right[stack[-1]] = i + 1
        else:
            parent[i] = i + 1
        stack.append(i)
    root = stack[0] + 1 if stack else None
    return CartesianTree(parent, left, right, root)


def parent_distance(s: Sequence[int]) -> list[int]:
    """Distance from each position to the nearest earlier element <= it.

    ``pd[i-1] = i - max{j < i : s[j] <= s[i]}`` and 0 when no such ``j``
    exists.  Computed in linear time with an all-nearest-smaller-values
    stack.  ``pd[0]`` is always 0 and ``0 <= pd[i-1] <= i-1``.
    """
    n = len(s)
    pd = [0] * n
    stack: list[int] = []
    for i in range(n):
        v = s[i]
        while stack and s[stack[-1]] > v:
            stack.pop()
        if stack:
            pd[i] = i - stack[-1]
        stack.append(i)
    return pd


def binary_representation(s: Sequence[int]) -> list[int]:
    """Bit per adjacent pair: 1 when ``s[i] <= s[i+1]``, length ``n - 1``."""
    return [1 if s[i] <= s[i + 1] else 0 for i in range(len(s) - 1)]


def global_parent(s: Sequence[int]) -> list[int]:
    """1-based parent index of every position in the full Cartesian tree.

    The root maps to itself; following the map from any position reaches the
    root without cycles.
    """
    return build_cartesian_tree(s).parent


def verify_match(window: Sequence[int], gp: Sequence[int]) -> bool:
    """Check whether ``window`` has the same Cartesian tree as the pattern
    whose global-parent form is ``gp``.

    True iff for every position ``i``: ``window[gp[i]] < window[i]``, or the
    two are equal with ``gp[i] <= i``.  Linear time, no representation of the
    window is built.
    """
    if len(window) != len(gp):
        raise ValueError(
            f"window length {len(window)} != global-parent length {len(gp)}"
        )
    return _verify_at(window, 0, gp)


def _verify_at(text: Sequence[int], base: int, gp: Sequence[int]) -> bool:
    """``verify_match`` against the window of ``text`` starting at 0-based
    ``base``; the caller guarantees the window lies inside the text."""
    for i in range(len(gp)):
        g = gp[i] - 1
        pv = text[base + g]
        v = text[base + i]
        if pv < v or (pv == v and g <= i):
            continue
        return False
    return True


def min_index(view: Sequence[int]) -> int:
    """1-based offset of the leftmost minimum of a nonempty view."""
    if len(view) == 0:
        raise ValueError("min_index of an empty view")
    return view.index(min(view)) + 1


def _min_index_at(text: Sequence[int], start: int, length: int) -> int:
    """Leftmost-minimum offset (1-based) of ``text[start : start+length]``."""
    block = text[start : start + length]
    return block.index(min(block)) + 1
