from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from kneser.combinat import (
    binom,
    colex_array,
    colex_rank,
    colex_unrank,
    count_from_lambda,
    falling_ratio,
    from_mask,
    iter_colex,
    iter_lex,
    lex_precedes,
    lex_rank,
    lex_unrank,
    parse_fraction,
    rank,
    size_parameter,
    to_mask,
    union_of_stars_size,
    unrank,
    venn_identity_sides,
)
from oracles import brute_colex_order


def test_binom_edges():
    assert binom(5, 2) == 10
    assert binom(5, -1) == 0
    assert binom(3, 5) == 0
    assert binom(-1, 0) == 0


def test_falling_ratio_small():
    assert falling_ratio(5, 2, 0) == 1
    assert falling_ratio(5, 2, 1) == Fraction(2, 5)
    assert falling_ratio(5, 2, 2) == Fraction(1, 10)
    assert falling_ratio(5, 2, 3) == 0
    with pytest.raises(ValueError):
        falling_ratio(5, 2, -1)


def test_masks_roundtrip():
    assert to_mask([1, 3]) == 0b101
    assert from_mask(0b101) == (1, 3)
    with pytest.raises(ValueError):
        to_mask([0])


def test_colex_matches_definition():
    for n, k in ((5, 2), (6, 3), (7, 1)):
        expected = [to_mask(s) for s in brute_colex_order(n, k)]
        assert list(iter_colex(n, k)) == expected
        assert colex_array(n, k).tolist() == expected
        for r, m in enumerate(expected):
            assert colex_rank(m) == r
            assert colex_unrank(r, n, k) == m


def test_lex_order_and_ranks():
    lex = [to_mask(c) for c in combinations(range(1, 7), 3)]
    assert list(iter_lex(6, 3)) == lex
    for r, m in enumerate(lex):
        assert lex_rank(m, 6) == r
        assert lex_unrank(r, 6, 3) == m
    assert all(lex_precedes(a, b) for a, b in zip(lex, lex[1:]))


def test_rank_dispatch():
    m = to_mask([2, 5])
    assert rank("colex", 5, m) == colex_rank(m)
    assert unrank("lex", 5, 2, rank("lex", 5, m)) == m
    with pytest.raises(ValueError):
        rank("revlex", 5, m)


def test_size_parameter_examples():
    sp = size_parameter(5, 2, 5)
    assert (sp.s, sp.lam) == (1, Fraction(4, 3))
    sp = size_parameter(8, 2, 14)
    assert sp.s == 2
    assert count_from_lambda(8, 2, sp.s, sp.lam) == 14


def test_size_parameter_roundtrip_all():
    for n, k in ((6, 2), (7, 3), (9, 2)):
        for m in range(1, binom(n, k) + 1):
            sp = size_parameter(n, k, m)
            assert sp.s <= sp.lam <= sp.s + 1
            assert count_from_lambda(n, k, sp.s, sp.lam) == m


def test_union_of_stars_size_and_venn():
    assert union_of_stars_size(5, 2, 1) == 4
    assert union_of_stars_size(5, 2, 2) == 7
    assert union_of_stars_size(6, 2, 2) == 9
    for s in range(1, 4):
        lhs, rhs = venn_identity_sides(9, 3, s)
        assert lhs == rhs


def test_parse_fraction_rejects_floats():
    assert parse_fraction("3/2") == Fraction(3, 2)
    assert parse_fraction("2") == 2
    with pytest.raises(ValueError):
        parse_fraction("1.5")
