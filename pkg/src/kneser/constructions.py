"""Families with small induced maximum degree: unions of stars, the
threshold (explicit) and random constructions around s+1 stars, and
lex/colex initial segments."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Optional

import numpy as np

from .combinat import binom, colex_array, count_from_lambda, iter_colex, iter_lex, to_mask
from .family import Family

log = logging.getLogger(__name__)

MAX_RETRIES = 1000


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    k: int
    s: int
    lam: Fraction
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.k < 1 or self.s < 1 or self.n < 1:
            raise ValueError("n, k, s must be positive")
        if self.s + 1 > self.n:
            raise ValueError("need s + 1 <= n")
        if not self.s <= self.lam <= self.s + 1:
            raise ValueError(f"lambda={self.lam} outside [{self.s}, {self.s + 1}]")

    @property
    def prob(self) -> Fraction:
        return self.lam / (self.s + 1)

    def target_size(self) -> int:
        m = count_from_lambda(self.n, self.k, self.s, self.lam)
        if m.denominator != 1:
            raise ValueError(f"lambda={self.lam} gives non-integral size {m}")
        return int(m)


def union_of_stars(n: int, k: int, S: Iterable[int]) -> Family:
    """All k-sets meeting S."""
    sm = to_mask(S)
    if sm >> n:
        raise ValueError(f"S must lie in [{n}]")
    if k < 1:
        raise ValueError("k must be positive")
    if n <= 62:
        arr = colex_array(n, k)
        return Family._trusted(n, k, arr[(arr & sm) != 0])
    return Family._trusted(n, k, [m for m in iter_colex(n, k) if m & sm])


def _parts(n: int, k: int, s: int) -> tuple[list[int], dict[int, list[int]]]:
    """Core sets (meeting [s+1] at least twice) and, per element i of [s+1],
    the sets meeting [s+1] exactly in {i} (colex-sorted)."""
    head = s + 1
    tail = n - head
    core = []
    for j in range(2, min(head, k) + 1):
        for I in iter_colex(head, j):
            for rest in iter_colex(tail, k - j):
                core.append(I | rest << head)
    singles = {}
    for i in range(head):
        singles[i + 1] = [1 << i | rest << head for rest in iter_colex(tail, k - 1)]
    return sorted(core), singles


def _trim(groups: dict[int, list[int]], excess: int) -> dict[int, list[int]]:
    """Drop ``excess`` members, always from a currently largest group and
    taking its largest colex member; ties go to the group whose top member
    has the larger colex rank."""
    groups = {i: list(g) for i, g in groups.items()}
    for _ in range(excess):
        live = [i for i, g in groups.items() if g]
        if not live:
            raise ValueError("nothing left to trim")
        top = max(len(groups[i]) for i in live)
        i = max((i for i in live if len(groups[i]) == top), key=lambda i: groups[i][-1])
        groups[i].pop()
    return groups


def explicit_family(spec: ConstructionSpec) -> tuple[Family, int]:
    """Core sets plus, in each of the s+1 stars, the sets inside [t], with t
    the least integer making the star's share reach lam/(s+1); trimmed to
    the exact target size. Returns the family and t."""
    n, k, s = spec.n, spec.k, spec.s
    if n < 12 * k * s:
        raise ValueError(f"explicit construction needs n >= 12ks = {12 * k * s}, got n={n}")
    m = spec.target_size()
    need = spec.prob * binom(n - s - 1, k - 1)
    t = s + 1
    while binom(t - s - 1, k - 1) < need:
        t += 1
    core, singles = _parts(n, k, s)
    limit = 1 << t
    kept = {i: [x for x in g if x < limit] for i, g in singles.items()}
    pre = len(core) + sum(len(g) for g in kept.values())
    if pre < m:
        raise RuntimeError(f"explicit construction too small before trimming: {pre} < {m}")
    kept = _trim(kept, pre - m)
    members = core + [x for g in kept.values() for x in g]
    return Family(n, k, members), t


def _include_threshold(prob: Fraction) -> Optional[int]:
    """Draws below this 64-bit threshold realise probability ``prob`` exactly;
    ``None`` means every draw is accepted."""
    num, den = prob.numerator, prob.denominator
    thr = -((-num << 64) // den)
    return None if thr >= 1 << 64 else thr


def random_family(spec: ConstructionSpec) -> Family:
    """Core sets plus each set meeting [s+1] exactly once, kept independently
    with probability lam/(s+1); trimmed to the exact target size.

    Draws come from numpy's PCG64 stream seeded with ``spec.seed``, one raw
    64-bit word per candidate in colex order. An undersized draw is retried
    with seed + 1.
    """
    if spec.seed is None:
        raise ValueError("random construction needs a seed")
    n, k, s = spec.n, spec.k, spec.s
    m = spec.target_size()
    core, singles = _parts(n, k, s)
    owner = {x: i for i, g in singles.items() for x in g}
    candidates = sorted(owner)
    thr = _include_threshold(spec.prob)
    seed = spec.seed
    for attempt in range(MAX_RETRIES):
        rng = np.random.Generator(np.random.PCG64(seed))
        raw = rng.bit_generator.random_raw(len(candidates))
        if thr is None:
            chosen = candidates
        else:
            mask = raw < np.uint64(thr)
            chosen = [x for x, keep in zip(candidates, mask) if keep]
        if len(core) + len(chosen) >= m:
            break
        log.debug("random construction undersized with seed %d, retrying", seed)
        seed += 1
    else:
        raise RuntimeError(f"random construction undersized after {MAX_RETRIES} seeds")
    groups: dict[int, list[int]] = {i: [] for i in singles}
    for x in chosen:
        groups[owner[x]].append(x)
    groups = _trim(groups, len(core) + len(chosen) - m)
    return Family(n, k, core + [x for g in groups.values() for x in g])


def order_segment(order: str, n: int, k: int, m: int) -> Family:
    """The first m k-sets of [n] in lex or colex order."""
    total = binom(n, k)
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside [0, {total}]")
    if order == "lex":
        it = iter_lex(n, k)
    elif order == "colex":
        it = iter_colex(n, k)
    else:
        raise ValueError(f"unknown order {order!r}")
    return Family(n, k, islice(it, m))
