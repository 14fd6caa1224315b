from __future__ import annotations

from fractions import Fraction

import pytest

from kneser.bounds import (
    almost_intersecting,
    binomratio,
    construction_upper_bound,
    convert,
    helper_inequalities,
    jump_holds,
    lower_bound_level,
    main_lower_bound,
    random_expected_degree,
    stars_max_degree,
    threshold_evaluators,
    upper_bound_level,
)
from kneser.family import Family
from kneser.surd import Surd


def test_main_lower_bound_examples():
    r = main_lower_bound(10000, 1, 1, Fraction(3, 2))
    assert r.value.as_fraction() == Fraction(6389, 10000)
    assert r.hypothesis_ok
    assert r.display().startswith("0.6389")
    r = main_lower_bound(10**6, 1, 1, Fraction(2))
    assert r.value.as_fraction() == Fraction(988989, 10**6)
    assert r.display() == "0.988989000000"
    assert not main_lower_bound(100, 2, 1, Fraction(1)).hypothesis_ok


def test_construction_upper_bound():
    r = construction_upper_bound(24, 2, 1, Fraction(3, 2))
    assert r.value.as_fraction() == Fraction(91, 4)
    assert r.display() == "22.7500000000"
    with pytest.raises(ValueError):
        construction_upper_bound(23, 2, 1, Fraction(3, 2))
    forced = construction_upper_bound(23, 2, 1, Fraction(3, 2), force=True)
    assert forced.forced and "note" in forced.to_dict()


def test_random_expected_degree():
    assert random_expected_degree(40, 2, 1, Fraction(3, 2)) == Fraction(111, 4)
    assert random_expected_degree(50, 1, 2, Fraction(5, 2)) == Fraction(5, 3)


def test_stars_max_degree():
    assert stars_max_degree(5, 2, 1) == 0
    assert stars_max_degree(9, 2, 2) == 6
    assert stars_max_degree(9, 2, 6) == 20
    assert stars_max_degree(9, 2, 7) == 21


def test_threshold_values():
    r = threshold_evaluators("manylem3", 100, 1, 1, Fraction(2))
    assert r.display().startswith("0.0555728")
    r = threshold_evaluators("manylem3", 200, 1, 1, Fraction(2))
    assert r.display().startswith("0.342544")
    e = threshold_evaluators("extlem3", 12, 1, 1, Fraction(3, 2), c0=Fraction(3, 4))
    assert e.value < Fraction(3, 4)
    with pytest.raises(ValueError):
        threshold_evaluators("extlem3", 12, 1, 1, Fraction(3, 2))


def test_binomratio_and_convert():
    r = binomratio(10, 2, 8)
    assert r.measured == Fraction(28, 45)
    assert r.value.as_fraction() == Fraction(5, 9) and r.holds
    assert binomratio(10, 2, 10).holds
    upper, lower = convert(Family.star(8, 2, 1), 1)
    assert upper.value.as_fraction() == Fraction(5, 4)
    assert lower.value.as_fraction() == Fraction(1, 2)
    assert upper.holds and lower.holds
    assert all(r.holds for r in helper_inequalities(10, 2, 8))


def test_almost_intersecting():
    assert almost_intersecting(Family.star(7, 3, 2), 0)
    assert not almost_intersecting(Family.from_sets(5, 2, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3)]), 1)
    assert almost_intersecting(Family.full(5, 2), 3)


def test_levels_and_jump():
    for s in (1, 2, 3):
        p = Fraction(1, 10000 * s**5)
        assert jump_holds(s, p)
        for lam in (s, s + Fraction(1, 2), s + 1):
            assert lower_bound_level(s, Fraction(lam), p) <= upper_bound_level(s, Fraction(lam), p)
    assert lower_bound_level(1, Fraction(1), Fraction(1, 100)) == Surd(Fraction(1, 2) - Fraction(11, 100), -11, Fraction(1, 100))
