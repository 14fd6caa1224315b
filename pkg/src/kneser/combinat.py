"""Exact combinatorial arithmetic, subset encodings, lex/colex orders and the
size-parameter algebra.

Subsets of ``[n] = {1, ..., n}`` are stored as ``n``-bit words: element ``i``
lives in bit ``i - 1``. Colex order on k-sets coincides with numeric order of
these words, which the rest of the package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


def binom(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_ratio(n: int, k: int, i: int) -> Fraction:
    """k(k-1)...(k-i+1) / n(n-1)...(n-i+1), the chance that ``i`` fixed
    elements all land in a uniform random k-subset of [n]."""
    if i < 0:
        raise ValueError(f"need i >= 0, got i={i}")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    return Fraction(math.perm(k, i), math.perm(n, i))


# --- subset codes -------------------------------------------------------------

def to_mask(elements: Iterable[int]) -> int:
    """Encode 1-based elements as a bit word."""
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"repeated element {e}")
        mask |= bit
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    """Decode a bit word into its increasing 1-based elements."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def check_code(mask: int, n: int, k: int) -> None:
    if mask < 0 or mask >> n:
        raise ValueError(f"subset {from_mask(mask)} does not fit in [{n}]")
    if popcount(mask) != k:
        raise ValueError(f"subset {from_mask(mask)} does not have {k} elements")



# --- ranking ------------------------------------------------------------------

def colex_rank(mask: int) -> int:
    rank = 0
    j = 0
    pos = 0
    while mask:
        if mask & 1:
            j += 1
            rank += binom(pos, j)
        mask >>= 1
        pos += 1
    return rank


def colex_unrank(rank: int, n: int, k: int) -> int:
    total = binom(n, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    mask = 0
    pos = n
    while k > 0:
        pos -= 1
        c = binom(pos, k)
        if rank >= c:
            rank -= c
            mask |= 1 << pos
            k -= 1
    return mask


def _reflect(mask: int, n: int) -> int:
    # i -> n + 1 - i
    out = 0
    for e in from_mask(mask):
        out |= 1 << (n - e)
    return out


def lex_rank(mask: int, n: int) -> int:
    k = popcount(mask)
    return binom(n, k) - 1 - colex_rank(_reflect(mask, n))


def lex_unrank(rank: int, n: int, k: int) -> int:
    total = binom(n, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    return _reflect(colex_unrank(total - 1 - rank, n, k), n)


def rank(order: str, n: int, mask: int) -> int:
    if order == "lex":
        return lex_rank(mask, n)
    if order == "colex":
        return colex_rank(mask)
    raise ValueError(f"unknown order {order!r}")


def unrank(order: str, n: int, k: int, r: int) -> int:
    if order == "lex":
        return lex_unrank(r, n, k)
    if order == "colex":
        return colex_unrank(r, n, k)
    raise ValueError(f"unknown order {order!r}")


def lex_precedes(a: int, b: int) -> bool:
    """A comes before B in lex iff min(A symmetric-difference B) lies in A."""
    d = a ^ b
    if not d:
        return False
    low = d & -d
    return bool(a & low)


def iter_colex(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] in colex (= increasing numeric) order."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r


@lru_cache(maxsize=32)
def colex_array(n: int, k: int) -> np.ndarray:
    """All k-subsets of [n] as int64 words in colex order (n <= 62)."""
    if n > 62:
        raise ValueError("colex_array needs n <= 62")
    if n <= 22:
        allm = np.arange(1 << n, dtype=np.int64)
        out = allm[np.bitwise_count(allm) == k]
    else:
        out = np.fromiter(iter_colex(n, k), dtype=np.int64, count=binom(n, k))
    out.setflags(write=False)
    return out


def iter_lex(n: int, k: int) -> Iterator[int]:
    for combo in combinations(range(n), k):
        m = 0
        for c in combo:
            m |= 1 << c
        yield m


# --- size parameter -----------------------------------------------------------

def union_of_stars_size(n: int, k: int, s: int) -> int:
    return binom(n, k) - binom(n - s, k)


def count_from_lambda(n: int, k: int, s: int, lam: Fraction) -> Fraction:
    """Family size with size parameter ``lam`` relative to ``s`` stars."""
    lam = Fraction(lam)
    return binom(n, k) - binom(n - s, k) + (lam - s) * binom(n - s - 1, k - 1)


@dataclass(frozen=True)
class SizeParameter:
    n: int
    k: int
    m: int
    s: int
    lam: Fraction

    def crude_bounds(self) -> tuple[Fraction, Fraction]:
        """Affine-in-lambda sandwich around the family size."""
        n, k, s, lam = self.n, self.k, self.s, self.lam
        upper = lam * binom(n - 1, k - 1)
        lower = upper - binom(s + 1, 2) * binom(n - 2, k - 2)
        return lower, upper

    def crude_ok(self) -> bool:
        lo, hi = self.crude_bounds()
        return lo <= self.m <= hi


def size_parameter(n: int, k: int, m: int) -> SizeParameter:
    """Decompose a family size ``m`` as ``s`` whole stars plus a fraction.

    A size equal to a union of ``s + 1`` stars is reported as
    ``(s + 1, lam = s + 1)``, keeping ``s <= lam < s + 1`` otherwise.
    """
    if k < 1:
        raise ValueError("size parameter needs k >= 1")
    total = binom(n, k)
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside [0, {total}]")
    # union sizes strictly increase up to s = n - k + 1, then stay at C(n, k)
    s_cap = n - k + 1
    s = 0
    while s < s_cap and m >= union_of_stars_size(n, k, s + 1):
        s += 1
    rest = m - union_of_stars_size(n, k, s)
    lam = Fraction(s) if rest == 0 else s + Fraction(rest, binom(n - s - 1, k - 1))
    return SizeParameter(n, k, m, s, lam)


def venn_identity_sides(n: int, k: int, s: int) -> tuple[int, int]:
    """Both sides of C(n-k-1, k-1) = sum_i C(s-1, i) C(n-k-s, k-i-1)."""
    lhs = binom(n - k - 1, k - 1)
    rhs = sum(binom(s - 1, i) * binom(n - k - s, k - i - 1) for i in range(s))
    return lhs, rhs


def parse_fraction(text: str) -> Fraction:
    """Parse an exact ``p/q`` (or integer) string; floats are refused."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise ValueError(f"expected an exact rational 'p/q', got {text!r}")
    return Fraction(text)


def masks_to_sets(masks: Sequence[int]) -> list[tuple[int, ...]]:
    return [from_mask(m) for m in masks]
