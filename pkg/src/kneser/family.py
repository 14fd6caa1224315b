"""Set families, induced Kneser degrees, slices and star densities."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._threads import ordered_map
from .combinat import binom, check_code, colex_array, from_mask, iter_colex, to_mask

ZETA_MAX_N = 28
AUTO_ZETA_MAX_N = 24
WORD_BITS = 64
STRATEGIES = ("auto", "naive", "zeta", "subsets")


class FamilyFormatError(ValueError):
    pass


class Family:
    """Immutable family of k-subsets of [n], stored as colex-sorted bit words.

    Duplicate members are an error rather than being merged.
    """

    __slots__ = ("n", "k", "masks", "_array")

    def __init__(self, n: int, k: int, masks: Iterable[int] = ()):
        if n < 0 or k < 0 or k > n:
            raise ValueError(f"invalid parameters n={n}, k={k}")
        ms = sorted(int(m) for m in masks)
        if n <= 62 and ms:
            arr = np.array(ms, dtype=np.int64)
            bad = (arr < 0) | (arr >> n != 0) | (np.bitwise_count(arr) != k)
            if bad.any():
                check_code(ms[int(bad.argmax())], n, k)
            dup = np.nonzero(arr[1:] == arr[:-1])[0]
            if len(dup):
                raise ValueError(f"duplicate member {from_mask(ms[int(dup[0])])}")
        else:
            for i, m in enumerate(ms):
                check_code(m, n, k)
                if i and ms[i - 1] == m:
                    raise ValueError(f"duplicate member {from_mask(m)}")
        self.n = n
        self.k = k
        self.masks: tuple[int, ...] = tuple(ms)
        self._array = None

    @classmethod
    def _trusted(cls, n: int, k: int, masks: Iterable[int]) -> "Family":
        """Skip validation; ``masks`` must already be sorted, distinct k-set codes."""
        obj = cls.__new__(cls)
        obj.n, obj.k = n, k
        if isinstance(masks, np.ndarray):
            obj.masks = tuple(masks.tolist())
            obj._array = masks.astype(np.uint64)
        else:
            obj.masks = tuple(masks)
            obj._array = None
        return obj

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(n, k, (to_mask(s) for s in sets))

    @classmethod
    def full(cls, n: int, k: int) -> "Family":
        if k > n or k < 0:
            raise ValueError(f"invalid parameters n={n}, k={k}")
        if n <= 62:
            return cls._trusted(n, k, colex_array(n, k))
        return cls._trusted(n, k, list(iter_colex(n, k)))

    @classmethod
    def star(cls, n: int, k: int, x: int) -> "Family":
        if not 1 <= x <= n:
            raise ValueError(f"star centre {x} outside [{n}]")
        if k > n or k < 0:
            raise ValueError(f"invalid parameters n={n}, k={k}")
        bit = 1 << (x - 1)
        if n <= 62:
            arr = colex_array(n, k)
            return cls._trusted(n, k, arr[(arr & bit) != 0])
        return cls._trusted(n, k, [m for m in iter_colex(n, k) if m & bit])

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.masks)

    def __contains__(self, mask: object) -> bool:
        if not isinstance(mask, int):
            return False
        i = bisect_left(self.masks, mask)
        return i < len(self.masks) and self.masks[i] == mask

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return (self.n, self.k, self.masks) == (other.n, other.k, other.masks)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.masks))

    def __repr__(self) -> str:
        shown = ", ".join("".join(map(str, s)) if self.n < 10 else str(s) for s in self.sets()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"Family(n={self.n}, k={self.k}, |F|={len(self)}: {shown}{more})"

    @property
    def array(self) -> np.ndarray:
        if self.n > WORD_BITS:
            raise ValueError("word array only available for n <= 64")
        if self._array is None:
            self._array = np.array(self.masks, dtype=np.uint64)
        return self._array

    def sets(self) -> list[tuple[int, ...]]:
        return [from_mask(m) for m in self.masks]

    def union(self, other: "Family") -> "Family":
        _same_ground(self, other)
        return Family(self.n, self.k, set(self.masks) | set(other.masks))

    def with_members(self, masks: Iterable[int]) -> "Family":
        return Family(self.n, self.k, self.masks + tuple(masks))

    def complement(self) -> "Family":
        return Family(self.n, self.k, set(Family.full(self.n, self.k).masks) - set(self.masks))

    # text format: "n k count" then one increasing 1-based k-set per line
    def to_text(self) -> str:
        lines = [f"{self.n} {self.k} {len(self)}"]
        lines += [" ".join(map(str, s)) for s in self.sets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Family":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise FamilyFormatError("line 1: empty input, expected 'n k count'")
        header = lines[0].split()
        if len(header) != 3 or not all(t.isdigit() for t in header):
            raise FamilyFormatError(f"line 1: expected 'n k count', got {lines[0]!r}")
        n, k, count = map(int, header)
        if k > n:
            raise FamilyFormatError(f"line 1: k={k} exceeds n={n}")
        if len(lines) - 1 != count:
            raise FamilyFormatError(
                f"line {len(lines)}: header promises {count} members, found {len(lines) - 1}"
            )
        masks = []
        seen = set()
        for lineno, line in enumerate(lines[1:], start=2):
            toks = line.split()
            if len(toks) != k or not all(t.isdigit() for t in toks):
                raise FamilyFormatError(f"line {lineno}: expected {k} integers, got {line!r}")
            elems = [int(t) for t in toks]
            if any(b <= a for a, b in zip(elems, elems[1:])):
                raise FamilyFormatError(f"line {lineno}: elements must be strictly increasing")
            if elems and not (1 <= elems[0] and elems[-1] <= n):
                raise FamilyFormatError(f"line {lineno}: elements must lie in 1..{n}")
            m = to_mask(elems)
            if m in seen:
                raise FamilyFormatError(f"line {lineno}: duplicate member {line.strip()!r}")
            seen.add(m)
            masks.append(m)
        return cls(n, k, masks)


def _same_ground(f1: Family, f2: Family) -> None:
    if f1.n != f2.n:
        raise ValueError(f"families live on different ground sets ([{f1.n}] vs [{f2.n}])")


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    edge_count: int


# --- disjointness counting ------------------------------------------------------

def _zeta_counts(n: int, members: np.ndarray) -> np.ndarray:
    """Table over all 2^n masks: number of members contained in each mask."""
    dtype = np.int32 if len(members) < 2**31 else np.int64
    g = np.zeros(1 << n, dtype=dtype)
    g[members.astype(np.int64)] = 1
    for i in range(n):
        v = g.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return g


def _pairwise_counts(queries: np.ndarray, members: np.ndarray) -> np.ndarray:
    if len(queries) == 0:
        return np.zeros(0, dtype=np.int64)
    if len(members) == 0:
        return np.zeros(len(queries), dtype=np.int64)
    rows = max(1, (1 << 22) // len(members))
    chunks = [queries[i : i + rows] for i in range(0, len(queries), rows)]

    def work(chunk: np.ndarray) -> np.ndarray:
        return ((chunk[:, None] & members[None, :]) == 0).sum(axis=1, dtype=np.int64)

    return np.concatenate(ordered_map(work, chunks))


def _subset_counts(queries: Sequence[int], members: Sequence[int]) -> list[int]:
    """Inclusion-exclusion over the subsets of each query: the members
    meeting A number sum_{0 != T <= A} (-1)^(|T|+1) #{B : T <= B}."""
    cover: dict[int, int] = {}
    for b in members:
        sub = b
        while sub:
            cover[sub] = cover.get(sub, 0) + 1
            sub = (sub - 1) & b
    total = len(members)
    out = []
    for a in queries:
        meet = 0
        sub = a
        while sub:
            c = cover.get(sub)
            if c:
                meet += c if sub.bit_count() & 1 else -c
            sub = (sub - 1) & a
        out.append(total - meet)
    return out


def disjoint_counts(n: int, queries: Sequence[int], members: Sequence[int], strategy: str = "auto") -> list[int]:
    """For each query mask, the number of members disjoint from it.

    Strategies: ``naive`` compares all pairs; ``zeta`` tabulates subset
    sums over all 2^n masks; ``subsets`` counts members through their
    subsets by inclusion-exclusion (any n). ``auto`` picks the cheapest.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "zeta" and n > ZETA_MAX_N:
        raise ValueError(f"zeta strategy needs n <= {ZETA_MAX_N}, got n={n}")
    if not len(queries):
        return []
    if strategy == "auto":
        pairs = len(queries) * len(members)
        width = max((q.bit_count() for q in queries), default=0)
        sub_cost = 4 * (len(members) + len(queries)) << max(width, 0)
        zeta_cost = n << n if n <= AUTO_ZETA_MAX_N else None
        if n > WORD_BITS:
            pairs *= 20  # no vectorised pairwise path beyond one word
        costs = {"naive": pairs, "subsets": sub_cost}
        if zeta_cost is not None:
            costs["zeta"] = zeta_cost
        strategy = min(costs, key=costs.get)
    if strategy == "subsets":
        return _subset_counts(queries, members)
    if n > WORD_BITS:
        return [sum(1 for b in members if not a & b) for a in queries]
    q = np.array(queries, dtype=np.uint64)
    mem = np.array(members, dtype=np.uint64)
    if strategy == "zeta":
        table = _zeta_counts(n, mem)
        full = (1 << n) - 1
        comp = np.uint64(full) ^ q
        return [int(x) for x in table[comp.astype(np.int64)]]
    return [int(x) for x in _pairwise_counts(q, mem)]


def degree_profile(F: Family, strategy: str = "auto") -> DegreeProfile:
    """Degrees of the subgraph of K(n, k) induced by ``F``."""
    degs = tuple(disjoint_counts(F.n, F.masks, F.masks, strategy))
    total = sum(degs)
    return DegreeProfile(degs, max(degs, default=0), total // 2)


def max_degree(F: Family) -> int:
    return degree_profile(F).max_degree


def edge_count(F: Family) -> int:
    return degree_profile(F).edge_count


def bipartite_edge_count(F1: Family, F2: Family) -> int:
    """Number of disjoint pairs (A, B) with A in F1 and B in F2."""
    _same_ground(F1, F2)
    if F1.k + F2.k > F1.n and len(F1) and len(F2):
        return 0
    return sum(disjoint_counts(F1.n, F1.masks, F2.masks))


# --- slices and densities ---------------------------------------------------------

def slice_family(F: Family, J: Iterable[int], I: Iterable[int]) -> tuple[Family, tuple[int, ...]]:
    """The slice ``{A - J : A in F, A & J = I}`` over the ground set ``[n] - J``.

    The remaining ground set is relabelled 1..n-|J| in increasing order;
    the second return value lists the original label of each new element.
    """
    J = sorted(set(J))
    I = sorted(set(I))
    if not set(I) <= set(J):
        raise ValueError("I must be a subset of J")
    if J and not (1 <= J[0] and J[-1] <= F.n):
        raise ValueError(f"J must lie in [{F.n}]")
    if len(I) > F.k:
        raise ValueError("|I| exceeds k")
    jm, im = to_mask(J), to_mask(I)
    ground = tuple(e for e in range(1, F.n + 1) if not jm >> (e - 1) & 1)
    new_pos = {e: i for i, e in enumerate(ground)}
    out = []
    for a in F.masks:
        if a & jm != im:
            continue
        rest = a & ~jm
        b = 0
        for e in from_mask(rest):
            b |= 1 << new_pos[e]
        out.append(b)
    return Family(len(ground), F.k - len(I), out), ground


def element_counts(F: Family) -> list[int]:
    counts = [0] * F.n
    if F.n <= WORD_BITS and len(F):
        arr = F.array
        for i in range(F.n):
            counts[i] = int(((arr >> np.uint64(i)) & np.uint64(1)).sum())
        return counts
    for a in F.masks:
        for e in from_mask(a):
            counts[e - 1] += 1
    return counts


def star_densities(F: Family) -> list[Fraction]:
    """Density of ``F`` inside each star D_i = {A : i in A}."""
    if F.k < 1:
        raise ValueError("star densities need k >= 1")
    size = binom(F.n - 1, F.k - 1)
    return [Fraction(c, size) for c in element_counts(F)]


def density(F: Family) -> Fraction:
    return Fraction(len(F), binom(F.n, F.k))
