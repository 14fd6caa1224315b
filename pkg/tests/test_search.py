from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kneser.combinat import iter_colex
from kneser.constructions import order_segment
from kneser.family import Family, degree_profile
from kneser.search import (
    all_optimal_families,
    conjecture_reports,
    exact_minimize,
    greedy_matching,
    local_search,
    max_matching_size,
)
from oracles import max_matching_bruteforce, min_objective_bruteforce


def test_petersen_five_members():
    assert exact_minimize(5, 2, 5, "max_degree").optimum == 1
    res = exact_minimize(5, 2, 5, "edge_count")
    assert res.optimum == 2 and res.proven_optimal
    assert degree_profile(order_segment("lex", 5, 2, 5)).edge_count == 2


@pytest.mark.parametrize("objective", ["max_degree", "edge_count"])
def test_bnb_matches_bruteforce_petersen(objective):
    for m in range(0, 11):
        assert exact_minimize(5, 2, m, objective, mode="bnb").optimum == min_objective_bruteforce(5, 2, m, objective)


def test_bnb_and_exhaustive_share_witness():
    for m in (4, 7, 9):
        a = exact_minimize(6, 2, m, "max_degree", mode="bnb")
        b = exact_minimize(6, 2, m, "max_degree", mode="exhaustive")
        assert a.optimum == b.optimum
        assert a.witness == b.witness


def test_intersecting_sizes_have_zero_degree():
    assert exact_minimize(7, 3, 15).optimum == 0
    assert exact_minimize(7, 3, 16).optimum >= 1


def test_mode_limits():
    with pytest.raises(ValueError):
        exact_minimize(9, 3, 5, mode="bnb")
    with pytest.raises(ValueError):
        exact_minimize(5, 2, 3, objective="colour")
    with pytest.raises(ValueError):
        exact_minimize(5, 2, 11)


def test_all_optimal_families_are_optimal():
    opt, fams = all_optimal_families(5, 2, 5)
    assert opt == 1 and fams
    for F in fams:
        assert degree_profile(F).max_degree == 1


def test_local_search_deterministic():
    a = local_search(9, 2, 12, seed=3, iterations=400)
    b = local_search(9, 2, 12, seed=3, iterations=400)
    assert a.witness == b.witness and a.optimum == b.optimum
    assert len(a.witness) == 12
    assert a.optimum == degree_profile(a.witness).max_degree
    assert not a.proven_optimal


def test_local_search_reaches_petersen_optimum():
    res = local_search(5, 2, 5, seed=1, iterations=300, objective="edge_count")
    assert res.optimum == 2


@st.composite
def petersen_families(draw):
    verts = list(iter_colex(5, 2))
    return Family(5, 2, draw(st.lists(st.sampled_from(verts), unique=True, min_size=1)))


@settings(max_examples=80, deadline=None)
@given(petersen_families())
def test_greedy_matching_valid(F):
    g = greedy_matching(F)
    masks = [sum(1 << (e - 1) for e in s) for s in g.members]
    assert all(m in F for m in masks)
    assert all(not a & b for i, a in enumerate(masks) for b in masks[i + 1 :])
    assert g.size <= max_matching_size(F) == max_matching_bruteforce(F)


def test_conjecture_reports_shape():
    rep = conjecture_reports(5, 2, 7)
    assert rep["s"] == 2 and rep["lambda"] == "2"
    assert rep["sparse"]["hypothesis_checked"] is False
    assert rep["equality_case"]["hypothesis_ok"] is False
    assert rep["sparse"]["verdict"] in ("consistent", "counterexample found")
    dense = conjecture_reports(5, 2, 8)["dense"]
    assert dense["t"] == 5
