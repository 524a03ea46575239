"""Integer fingerprints of sequences that respect Cartesian-tree equality.

Two encodings are supported:

* parent-distance: the distance string is read as digits of the factorial
  number system, ``f(s) = sum pd[i] * (i-1)!``.  Injective on Cartesian
  trees, so before modular reduction equal fingerprints mean equal trees.
* binary: the ascent bit string read as a base-2 number, most significant
  bit first.  Equal trees imply equal fingerprints; the converse fails.

Long inputs overflow a machine word, in which case the fingerprint is the
residue modulo a configured prime.  Binary fingerprints of sliding windows
can be updated in constant time per shift; parent-distance fingerprints are
never rolled because one shift can change many distance characters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .analysis import match_probability
from .errors import ConfigurationError
from .representations import parent_distance

__all__ = [
    "EncodingKind",
    "FingerprintConfig",
    "pd_encode",
    "binary_encode",
    "roll_binary",
    "choose_block_size",
    "match_probability",
    "DEFAULT_MODULUS",
    "PD_EXACT_MAX_LEN",
    "BINARY_EXACT_MAX_BITS",
]

# Largest prime below 2**31: residues index tables comfortably and products
# with another residue stay inside 64 bits.
DEFAULT_MODULUS = 2147483647

# 20! - 1 is the largest factorial-system value that fits in 64 bits.
PD_EXACT_MAX_LEN = 20
BINARY_EXACT_MAX_BITS = 64

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class EncodingKind(enum.Enum):
    PARENT_DISTANCE = "pd"
    BINARY = "bin"


@dataclass(frozen=True)
class FingerprintConfig:
    """Encoding kind plus an optional prime modulus (None means exact)."""

    kind: EncodingKind
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.modulus is not None:
            if self.modulus <= 2 or not _is_prime(self.modulus):
                raise ConfigurationError(
                    f"modulus must be a prime > 2, got {self.modulus}"
                )

    @property
    def is_exact(self) -> bool:
        return self.modulus is None


def pd_encode(s: Sequence[int], cfg: FingerprintConfig) -> int:
    """Factorial-system fingerprint of the parent-distance string of ``s``.

    Linear time.  Exact mode is limited to n <= 20 so the value fits a
    64-bit word.
    """
    if cfg.kind is not EncodingKind.PARENT_DISTANCE:
        raise ConfigurationError("pd_encode requires a parent-distance config")
    n = len(s)
    if n < 1:
        raise ValueError("pd_encode of an empty sequence")
    if cfg.modulus is None and n > PD_EXACT_MAX_LEN:
        raise ConfigurationError(
            f"exact parent-distance fingerprint limited to n <= "
            f"{PD_EXACT_MAX_LEN}, got n = {n}"
        )
    pd = parent_distance(s)
    mod = cfg.modulus
    value = 0
    fact = 1  # weight of position i+1 (0-based i) is i!
    if mod is None:
        for i in range(1, n):
            value += pd[i] * fact
            fact *= i + 1
    else:
        for i in range(1, n):
            value = (value + pd[i] * fact) % mod
            fact = fact * (i + 1) % mod
    return value


def binary_encode(s: Sequence[int], cfg: FingerprintConfig) -> int:
    """Ascent bits of ``s`` read as a base-2 number via Horner's rule.

    Exact mode is limited to n - 1 <= 64 bits.
    """
    if cfg.kind is not EncodingKind.BINARY:
        raise ConfigurationError("binary_encode requires a binary config")
    n = len(s)
    if n < 1:
        raise ValueError("binary_encode of an empty sequence")
    if cfg.modulus is None and n - 1 > BINARY_EXACT_MAX_BITS:
        raise ConfigurationError(
            f"exact binary fingerprint limited to n - 1 <= "
            f"{BINARY_EXACT_MAX_BITS} bits, got n = {n}"
        )
    mod = cfg.modulus
    value = 0
    if mod is None:
        for i in range(n - 1):
            value = value << 1 | (s[i] <= s[i + 1])
    else:
        for i in range(n - 1):
            value = (value * 2 + (s[i] <= s[i + 1])) % mod
    return value


@lru_cache(maxsize=None)
def _msb_weight(window_len: int, modulus: Optional[int]) -> int:
    """Weight of the leading bit of a length-``window_len`` window."""
    if modulus is None:
        return 1 << (window_len - 2)
    return pow(2, window_len - 2, modulus)


def roll_binary(
    fp_prev: int,
    outgoing_bit: int,
    incoming_bit: int,
    window_len: int,
    cfg: FingerprintConfig,
) -> int:
    """Slide a binary fingerprint one position to the right.

    ``fp_prev`` must be the fingerprint of a length-``window_len`` window;
    the result is the fingerprint of the window shifted by one, obtained by
    subtracting the outgoing leading bit, doubling, and adding the incoming
    trailing bit.  Constant time.
    """
    if cfg.kind is not EncodingKind.BINARY:
        raise ConfigurationError("roll_binary requires a binary config")
    if window_len < 2:
        raise ConfigurationError("cannot roll a window with no bits")
    msb = _msb_weight(window_len, cfg.modulus)
    if cfg.modulus is None:
        return (fp_prev - msb * outgoing_bit) * 2 + incoming_bit
    return ((fp_prev - msb * outgoing_bit) * 2 + incoming_bit) % cfg.modulus


def choose_block_size(k: int, m: int) -> int:
    """Block size for block-fingerprint scanning of k patterns with shortest
    length m.

    ceil(log2(k*m)) keeps the block-collision probability at or below
    2/(k*m) while staying short relative to m; the result is capped at m and
    raised to 2 when possible so a block carries at least one bit.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    raw = (k * m - 1).bit_length()
    b = raw if raw <= m else m
    if b < 2:
        b = 2
    return b if b <= m else m
