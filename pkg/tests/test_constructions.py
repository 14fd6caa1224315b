from __future__ import annotations

from fractions import Fraction

import pytest

from kneser.bounds import construction_upper_bound, stars_max_degree
from kneser.combinat import binom, colex_rank, count_from_lambda, to_mask
from kneser.constructions import ConstructionSpec, explicit_family, order_segment, random_family, union_of_stars
from kneser.family import degree_profile


def _head_counts(F, s):
    head = (1 << (s + 1)) - 1
    singles = [0] * (s + 1)
    core = 0
    for a in F.masks:
        hit = (a & head).bit_count()
        if hit >= 2:
            core += 1
        elif hit == 1:
            singles[(a & head).bit_length() - 1] += 1
    return core, singles


def test_explicit_reference_instance():
    F, t = explicit_family(ConstructionSpec(24, 2, 1, Fraction(3, 2)))
    assert (len(F), t) == (34, 19)
    assert degree_profile(F).max_degree == 16
    assert construction_upper_bound(24, 2, 1, Fraction(3, 2)).value.as_fraction() == Fraction(91, 4)


def test_explicit_keeps_core_and_balances_stars():
    spec = ConstructionSpec(38, 3, 1, Fraction(3, 2))
    F, _ = explicit_family(spec)
    assert len(F) == spec.target_size()
    core, singles = _head_counts(F, 1)
    assert core == binom(36, 1)
    assert max(singles) - min(singles) <= 1
    assert not any(a & 0b11 == 0 for a in F.masks)


def test_explicit_rejects_small_n():
    with pytest.raises(ValueError):
        explicit_family(ConstructionSpec(20, 2, 1, Fraction(3, 2)))


def test_nonintegral_size_rejected():
    spec = ConstructionSpec(25, 2, 1, Fraction(4, 3))
    assert count_from_lambda(25, 2, 1, spec.lam).denominator != 1
    with pytest.raises(ValueError):
        spec.target_size()


def test_spec_validation():
    with pytest.raises(ValueError):
        ConstructionSpec(24, 2, 1, Fraction(5, 2))
    with pytest.raises(ValueError):
        ConstructionSpec(24, 0, 1, 1)


def test_random_is_seeded_and_sized():
    spec = ConstructionSpec(40, 2, 1, Fraction(3, 2), seed=7)
    F = random_family(spec)
    assert len(F) == spec.target_size() == 58
    assert random_family(spec) == F
    other = random_family(ConstructionSpec(40, 2, 1, Fraction(3, 2), seed=8))
    assert len(other) == 58 and other != F
    with pytest.raises(ValueError):
        random_family(ConstructionSpec(40, 2, 1, Fraction(3, 2)))


def test_random_full_probability_keeps_everything():
    spec = ConstructionSpec(30, 2, 2, Fraction(3), seed=1)
    F = random_family(spec)
    assert F == union_of_stars(30, 2, [1, 2, 3])


def test_union_of_stars_closed_forms():
    for n, k, s in ((9, 2, 2), (10, 3, 3), (12, 4, 1), (14, 5, 4)):
        F = union_of_stars(n, k, range(1, s + 1))
        assert len(F) == binom(n, k) - binom(n - s, k)
        assert degree_profile(F).max_degree == stars_max_degree(n, k, s)
    assert stars_max_degree(9, 2, 2) == 6


def test_order_segments():
    lex = order_segment("lex", 5, 2, 5)
    assert sorted(lex.sets()) == [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3)]
    assert degree_profile(lex).edge_count == 2
    colex = order_segment("colex", 6, 3, 4)
    assert [colex_rank(m) for m in colex.masks] == [0, 1, 2, 3]
    assert to_mask([1, 2, 4]) in colex
    with pytest.raises(ValueError):
        order_segment("lex", 5, 2, 11)
