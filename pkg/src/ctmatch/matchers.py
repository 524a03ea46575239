"""Multi-pattern search over integer sequences by Cartesian-tree equality.

All three scanners follow the same filter-and-verify scheme: preprocessing
hashes pattern fingerprints into tables, the scan computes fingerprints of
short text windows to propose candidate patterns, and every candidate is
confirmed with an exact linear-time global-parent check.  Fingerprints are
safe filters (a true match can never be rejected), so collisions only cost
extra verification work.

* Wu-Manber style: blocks of size b index a shift table (how far the scan
  may safely jump) and a bucket table of patterns whose prefix ends with the
  block.
* Rabin-Karp style: length-m prefixes are hashed with the binary encoding
  and the scan advances one position at a time, rolling the fingerprint in
  constant time.
* Alpha-skip style: every block position of every prefix is indexed, and the
  scan jumps a fixed m - b + 1 positions between stops.

Patterns with identical parent-distance representations are grouped so each
group is verified once per candidate alignment and hits are fanned out to
all members.  A brute-force scanner serves as the correctness baseline.

Tables and prepared pattern sets are immutable after construction and may be
shared by concurrent searches; see ``search_chunked`` for the contract that
lets one text be scanned in parallel pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

from .errors import ConfigurationError, InputError
from .fingerprints import (
    BINARY_EXACT_MAX_BITS,
    PD_EXACT_MAX_LEN,
    EncodingKind,
    FingerprintConfig,
    roll_binary,
)
from .representations import (
    _min_index_at,
    _verify_at,
    global_parent,
    parent_distance,
)

__all__ = [
    "MatchHit",
    "PreparedPatternSet",
    "WMTables",
    "RKTables",
    "ASTables",
    "prepare_patterns",
    "wm_preprocess",
    "wm_search",
    "rk_preprocess",
    "rk_search",
    "as_preprocess",
    "as_search",
    "naive_search",
    "search_chunked",
]


class MatchHit(NamedTuple):
    """One occurrence: pattern ``pattern_id`` matches the text window ending
    at 1-based position ``end_pos``."""

    pattern_id: int
    end_pos: int


def _hit_key(h: MatchHit) -> tuple[int, int]:
    return (h.end_pos, h.pattern_id)


@dataclass
class PreparedPatternSet:
    """Patterns plus everything the scanners need about them.

    ``groups`` partitions 1-based pattern ids by identical parent-distance
    representation (hence identical Cartesian tree and length); the first
    member of each group is its representative.  ``block_min_index`` is the
    1-based leftmost-minimum offset of the last block of each pattern's
    length-m prefix, present only when a block size was given.
    """

    patterns: list[list[int]]
    m: int
    pd: list[list[int]]
    gp: list[list[int]]
    groups: list[list[int]]
    rep_of: list[int]
    members_of_rep: dict[int, list[int]]
    block_size: Optional[int]
    block_min_index: Optional[list[int]]

    @property
    def k(self) -> int:
        return len(self.patterns)


def prepare_patterns(
    patterns: Sequence[Sequence[int]], block_size: Optional[int] = None
) -> PreparedPatternSet:
    """Precompute representations, groups and (optionally) block min-indices.

    Linear in the total pattern length.
    """
    if not patterns:
        raise InputError("pattern list is empty")
    pats = [list(p) for p in patterns]
    for pid, p in enumerate(pats, 1):
        if not p:
            raise InputError(f"pattern {pid} is empty")
    m = min(len(p) for p in pats)
    if block_size is not None and not 1 <= block_size <= m:
        raise ConfigurationError(
            f"block size {block_size} outside [1, {m}] for shortest pattern"
        )
    pd = [parent_distance(p) for p in pats]
    gp = [global_parent(p) for p in pats]

    by_pd: dict[tuple[int, ...], list[int]] = {}
    for pid, d in enumerate(pd, 1):
        by_pd.setdefault(tuple(d), []).append(pid)
    groups = list(by_pd.values())
    rep_of = [0] * len(pats)
    members_of_rep: dict[int, list[int]] = {}
    for group in groups:
        rep = group[0]
        members_of_rep[rep] = group
        for pid in group:
            rep_of[pid - 1] = rep

    block_min_index = None
    if block_size is not None:
        block_min_index = [
            _min_index_at(p, m - block_size, block_size) for p in pats
        ]
    return PreparedPatternSet(
        patterns=pats,
        m=m,
        pd=pd,
        gp=gp,
        groups=groups,
        rep_of=rep_of,
        members_of_rep=members_of_rep,
        block_size=block_size,
        block_min_index=block_min_index,
    )


# Exact binary block fingerprints with at most this many elements are table
# indices into dense arrays of size 2**(b-1); everything else goes through a
# dict keyed by the fingerprint value.
_DIRECT_ADDRESS_MAX_B = 20

LookupTable = Union[list, dict]


@dataclass
class WMTables:
    """Shift and bucket tables for the Wu-Manber style scanner."""

    b: int
    cfg: FingerprintConfig
    default_shift: int
    shift: LookupTable
    buckets: LookupTable


@dataclass
class RKTables:
    """Length-m prefix buckets for the Rabin-Karp style scanner."""

    m: int
    cfg: FingerprintConfig
    buckets: dict[int, list[int]]


@dataclass
class ASTables:
    """Block-position buckets for the alpha-skip style scanner: fingerprint
    -> list of (pattern id, 1-based block end within the length-m prefix)."""

    b: int
    cfg: FingerprintConfig
    pos: LookupTable


def _binary_fp_at(
    text: Sequence[int], start: int, length: int, mod: Optional[int]
) -> int:
    """Binary fingerprint of ``text[start : start+length]`` (0-based)."""
    fp = 0
    end = start + length - 1
    if mod is None:
        for i in range(start, end):
            fp = fp << 1 | (text[i] <= text[i + 1])
    else:
        for i in range(start, end):
            fp = (fp * 2 + (text[i] <= text[i + 1])) % mod
    return fp


def _pd_fp_at(
    text: Sequence[int], start: int, length: int, mod: Optional[int]
) -> int:
    """Parent-distance fingerprint of ``text[start : start+length]``."""
    stack = [0]
    value = 0
    fact = 1
    if mod is None:
        for i in range(1, length):
            v = text[start + i]
            while stack and text[start + stack[-1]] > v:
                stack.pop()
            if stack:
                value += (i - stack[-1]) * fact
            fact *= i + 1
            stack.append(i)
    else:
        for i in range(1, length):
            v = text[start + i]
            while stack and text[start + stack[-1]] > v:
                stack.pop()
            if stack:
                value = (value + (i - stack[-1]) * fact) % mod
            fact = fact * (i + 1) % mod
            stack.append(i)
    return value


def _check_block_capacity(cfg: FingerprintConfig, length: int) -> None:
    if cfg.modulus is not None:
        return
    if cfg.kind is EncodingKind.BINARY and length - 1 > BINARY_EXACT_MAX_BITS:
        raise ConfigurationError(
            f"exact binary fingerprint limited to {BINARY_EXACT_MAX_BITS} "
            f"bits, got window of {length} elements"
        )
    if cfg.kind is EncodingKind.PARENT_DISTANCE and length > PD_EXACT_MAX_LEN:
        raise ConfigurationError(
            f"exact parent-distance fingerprint limited to "
            f"{PD_EXACT_MAX_LEN} elements, got {length}"
        )


def _block_fp(
    text: Sequence[int], start: int, length: int, cfg: FingerprintConfig
) -> int:
    if cfg.kind is EncodingKind.BINARY:
        return _binary_fp_at(text, start, length, cfg.modulus)
    return _pd_fp_at(text, start, length, cfg.modulus)


def _use_direct_address(cfg: FingerprintConfig, b: int) -> bool:
    return (
        cfg.kind is EncodingKind.BINARY
        and cfg.modulus is None
        and b <= _DIRECT_ADDRESS_MAX_B
    )


def wm_preprocess(pps: PreparedPatternSet, cfg: FingerprintConfig) -> WMTables:
    """Build the shift and bucket tables.

    For every block ending at positions b..m-1 of each pattern's length-m
    prefix, the shift entry keeps the distance from the block's rightmost
    occurrence to position m; untouched entries keep the safe maximum
    m - b + 1.  Buckets collect the patterns whose prefix's last block has
    the given fingerprint.
    """
    b = pps.block_size
    if b is None:
        raise ConfigurationError("pattern set was prepared without a block size")
    _check_block_capacity(cfg, b)
    m = pps.m
    default = m - b + 1
    direct = _use_direct_address(cfg, b)
    if direct:
        size = 1 << (b - 1)
        shift: LookupTable = [default] * size
        buckets: LookupTable = [None] * size
    else:
        shift = {}
        buckets = {}
    for pid, pat in enumerate(pps.patterns, 1):
        for j in range(b, m):
            fp = _block_fp(pat, j - b, b, cfg)
            sh = m - j
            if direct:
                if shift[fp] > sh:
                    shift[fp] = sh
            elif shift.get(fp, default) > sh:
                shift[fp] = sh
        fp = _block_fp(pat, m - b, b, cfg)
        if direct:
            if buckets[fp] is None:
                buckets[fp] = []
            buckets[fp].append(pid)
        else:
            buckets.setdefault(fp, []).append(pid)
    return WMTables(b=b, cfg=cfg, default_shift=default, shift=shift, buckets=buckets)


def _verify_bucket(
    text: Sequence[int],
    n: int,
    base: int,
    bucket: Iterable[int],
    pps: PreparedPatternSet,
    hits: list[MatchHit],
    block_min: Optional[int] = None,
) -> None:
    """Verify each distinct group representative in ``bucket`` against the
    window starting at 0-based ``base`` and fan hits out to group members."""
    rep_of = pps.rep_of
    gps = pps.gp
    members = pps.members_of_rep
    bmi = pps.block_min_index
    seen = set()
    for pid in bucket:
        rep = rep_of[pid - 1]
        if rep in seen:
            continue
        seen.add(rep)
        if block_min is not None and bmi[rep - 1] != block_min:
            continue
        gp = gps[rep - 1]
        mlen = len(gp)
        if base + mlen > n:
            continue
        if _verify_at(text, base, gp):
            end = base + mlen
            for member in members[rep]:
                hits.append(MatchHit(member, end))


def wm_search(
    text: Sequence[int],
    tables: WMTables,
    pps: PreparedPatternSet,
    *,
    min_index_filter: bool = False,
    on_stop: Optional[Callable[[int], None]] = None,
) -> list[MatchHit]:
    """Scan ``text`` with the shift/bucket tables.

    At each stop the fingerprint of the block ending there selects candidate
    patterns, each group is verified once, and the scan advances by the
    block's shift entry.  When consecutive stops are one position apart and
    the encoding is binary, the block fingerprint is rolled instead of
    recomputed.  ``min_index_filter`` additionally discards candidates whose
    stored block min-index differs from the text block's (binary encoding
    only).  ``on_stop`` is a diagnostics hook called with each 1-based stop
    position.

    Returns hits sorted by (end position, pattern id), duplicate-free.
    """
    cfg = tables.cfg
    if min_index_filter:
        if cfg.kind is not EncodingKind.BINARY:
            raise ConfigurationError(
                "min-index filtering requires the binary encoding"
            )
        if pps.block_min_index is None:
            raise ConfigurationError(
                "pattern set was prepared without a block size; "
                "min-index data is missing"
            )
    hits: list[MatchHit] = []
    n = len(text)
    m = pps.m
    if n < m:
        return hits
    b = tables.b
    mod = cfg.modulus
    binary = cfg.kind is EncodingKind.BINARY
    shift = tables.shift
    buckets = tables.buckets
    direct = isinstance(shift, list)
    default_shift = tables.default_shift
    can_roll = binary and b >= 2
    idx = m
    prev_idx = -2
    prev_fp = 0
    while idx <= n:
        if can_roll and idx == prev_idx + 1:
            ob = 1 if text[idx - b - 1] <= text[idx - b] else 0
            ib = 1 if text[idx - 2] <= text[idx - 1] else 0
            fp = roll_binary(prev_fp, ob, ib, b, cfg)
        elif binary:
            fp = _binary_fp_at(text, idx - b, b, mod)
        else:
            fp = _pd_fp_at(text, idx - b, b, mod)
        if on_stop is not None:
            on_stop(idx)
        bucket = buckets[fp] if direct else buckets.get(fp)
        if bucket:
            block_min = (
                _min_index_at(text, idx - b, b) if min_index_filter else None
            )
            _verify_bucket(text, n, idx - m, bucket, pps, hits, block_min)
        prev_idx = idx
        prev_fp = fp
        idx += shift[fp] if direct else shift.get(fp, default_shift)
    hits.sort(key=_hit_key)
    return hits


def rk_preprocess(pps: PreparedPatternSet, cfg: FingerprintConfig) -> RKTables:
    """Bucket patterns by the binary fingerprint of their length-m prefix.

    Only the binary encoding is allowed because the scan rolls fingerprints.
    """
    if cfg.kind is not EncodingKind.BINARY:
        raise ConfigurationError(
            "rolling-prefix search requires the binary encoding"
        )
    m = pps.m
    _check_block_capacity(cfg, m)
    buckets: dict[int, list[int]] = {}
    for pid, pat in enumerate(pps.patterns, 1):
        fp = _binary_fp_at(pat, 0, m, cfg.modulus)
        buckets.setdefault(fp, []).append(pid)
    return RKTables(m=m, cfg=cfg, buckets=buckets)


def rk_search(
    text: Sequence[int], tables: RKTables, pps: PreparedPatternSet
) -> list[MatchHit]:
    """Scan every position, rolling the length-m prefix fingerprint.

    The first window is encoded from scratch; every subsequent fingerprint
    is rolled in constant time.  Candidates are verified exactly as in the
    block-based scanners.  Returns hits sorted by (end position, pattern
    id), duplicate-free.
    """
    cfg = tables.cfg
    hits: list[MatchHit] = []
    n = len(text)
    m = pps.m
    if n < m:
        return hits
    mod = cfg.modulus
    buckets = tables.buckets
    fp = _binary_fp_at(text, 0, m, mod)
    idx = m
    while True:
        bucket = buckets.get(fp)
        if bucket:
            _verify_bucket(text, n, idx - m, bucket, pps, hits)
        if idx == n:
            break
        if m >= 2:
            ob = 1 if text[idx - m] <= text[idx - m + 1] else 0
            ib = 1 if text[idx - 1] <= text[idx] else 0
            fp = roll_binary(fp, ob, ib, m, cfg)
        idx += 1
    hits.sort(key=_hit_key)
    return hits


def as_preprocess(pps: PreparedPatternSet, cfg: FingerprintConfig) -> ASTables:
    """Index every block of every pattern's length-m prefix: fingerprint ->
    list of (pattern id, block end position j) for j in b..m."""
    b = pps.block_size
    if b is None:
        raise ConfigurationError("pattern set was prepared without a block size")
    _check_block_capacity(cfg, b)
    m = pps.m
    direct = _use_direct_address(cfg, b)
    pos: LookupTable = [None] * (1 << (b - 1)) if direct else {}
    for pid, pat in enumerate(pps.patterns, 1):
        for j in range(b, m + 1):
            fp = _block_fp(pat, j - b, b, cfg)
            if direct:
                if pos[fp] is None:
                    pos[fp] = []
                pos[fp].append((pid, j))
            else:
                pos.setdefault(fp, []).append((pid, j))
    return ASTables(b=b, cfg=cfg, pos=pos)


def as_search(
    text: Sequence[int],
    tables: ASTables,
    pps: PreparedPatternSet,
    *,
    on_stop: Optional[Callable[[int], None]] = None,
) -> list[MatchHit]:
    """Scan with a fixed stride of m - b + 1 positions.

    At each stop, every indexed (pattern, block end) pair whose fingerprint
    matches proposes the alignment that would place the block there;
    alignments falling outside the text are skipped.  Returns hits sorted by
    (end position, pattern id), duplicate-free.
    """
    cfg = tables.cfg
    hits: list[MatchHit] = []
    n = len(text)
    m = pps.m
    if n < m:
        return hits
    b = tables.b
    mod = cfg.modulus
    binary = cfg.kind is EncodingKind.BINARY
    pos = tables.pos
    direct = isinstance(pos, list)
    rep_of = pps.rep_of
    gps = pps.gp
    members = pps.members_of_rep
    step = m - b + 1
    can_roll = binary and b >= 2 and step == 1
    idx = m
    prev_fp = 0
    first = True
    while idx <= n:
        if can_roll and not first:
            ob = 1 if text[idx - b - 1] <= text[idx - b] else 0
            ib = 1 if text[idx - 2] <= text[idx - 1] else 0
            fp = roll_binary(prev_fp, ob, ib, b, cfg)
        elif binary:
            fp = _binary_fp_at(text, idx - b, b, mod)
        else:
            fp = _pd_fp_at(text, idx - b, b, mod)
        if on_stop is not None:
            on_stop(idx)
        bucket = pos[fp] if direct else pos.get(fp)
        if bucket:
            seen = set()
            for pid, j in bucket:
                rep = rep_of[pid - 1]
                key = (rep, j)
                if key in seen:
                    continue
                seen.add(key)
                base = idx - j
                if base < 0:
                    continue
                gp = gps[rep - 1]
                mlen = len(gp)
                if base + mlen > n:
                    continue
                if _verify_at(text, base, gp):
                    end = base + mlen
                    for member in members[rep]:
                        hits.append(MatchHit(member, end))
        prev_fp = fp
        first = False
        idx += step
    hits.sort(key=_hit_key)
    return hits


def naive_search(
    text: Sequence[int], pps: PreparedPatternSet
) -> list[MatchHit]:
    """Brute-force baseline: compare the parent-distance representation of
    every window against every pattern's.

    The window's parent-distance values are read off the text's global
    parent-distance array: a distance reaching back past the window start
    becomes 0, anything else is unchanged.  Quadratic in the worst case;
    this is the authoritative match set the scanners are tested against.
    """
    n = len(text)
    hits: list[MatchHit] = []
    gpd = parent_distance(text)
    for pid, pat in enumerate(pps.patterns, 1):
        p = pps.pd[pid - 1]
        length = len(p)
        if length > n:
            continue
        if length == 1:
            hits.extend(MatchHit(pid, end) for end in range(1, n + 1))
            continue
        for s0 in range(n - length + 1):
            ok = True
            for u in range(1, length):
                d = gpd[s0 + u]
                if (d if d <= u else 0) != p[u]:
                    ok = False
                    break
            if ok:
                hits.append(MatchHit(pid, s0 + length))
    hits.sort(key=_hit_key)
    return hits


def search_chunked(
    text: Sequence[int],
    run: Callable[[list[int]], Iterable[MatchHit]],
    n_chunks: int,
    max_pattern_len: int,
) -> list[MatchHit]:
    """Scan one text as independent chunks that overlap by
    ``max_pattern_len - 1`` positions.

    Every match window then lies entirely inside at least one chunk, so the
    union of per-chunk hits (with end positions offset back to the full
    text) equals a whole-text scan; duplicates arising in the overlaps are
    removed.  ``run`` maps a chunk to hits with chunk-local end positions.
    Prepared tables are read-only, so ``run`` may be executed concurrently
    on any executor and the results combined in any order.
    """
    if n_chunks < 1:
        raise ValueError("n_chunks must be >= 1")
    if max_pattern_len < 1:
        raise ValueError("max_pattern_len must be >= 1")
    n = len(text)
    if n == 0:
        return []
    base = -(-n // n_chunks)
    overlap = max_pattern_len - 1
    merged: set[MatchHit] = set()
    for c in range(n_chunks):
        lo = c * base
        if lo >= n:
            break
        hi = min(n, lo + base + overlap)
        for pid, end in run(list(text[lo:hi])):
            merged.add(MatchHit(pid, end + lo))
    return sorted(merged, key=_hit_key)
