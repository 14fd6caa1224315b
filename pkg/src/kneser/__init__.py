"""Exact computations on induced subgraphs of Kneser graphs K(n, k)."""

from .bounds import (
    almost_intersecting,
    binomratio,
    construction_upper_bound,
    convert,
    helper_inequalities,
    main_lower_bound,
    random_expected_degree,
    stars_max_degree,
    threshold_evaluators,
)
from .combinat import SizeParameter, binom, colex_rank, falling_ratio, lex_rank, rank, size_parameter, unrank
from .constructions import ConstructionSpec, explicit_family, order_segment, random_family, union_of_stars
from .family import DegreeProfile, Family, FamilyFormatError, bipartite_edge_count, degree_profile, slice_family, star_densities
from .report import BoundReport
from .search import (
    MatchingResult,
    SearchResult,
    conjecture_reports,
    exact_minimize,
    greedy_matching,
    local_search,
)
from .spectral import (
    SpectralProfile,
    SpectrumTable,
    adjacency_apply,
    check_gammamax,
    eigencomponent_norms,
    linear_profile,
    mixing_bounds,
    singular_ratio_bound,
    spectrum,
    thirdorder_bound,
)
from .surd import Surd

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ConstructionSpec", "DegreeProfile", "Family", "FamilyFormatError",
    "MatchingResult", "SearchResult", "SizeParameter", "SpectralProfile", "SpectrumTable", "Surd",
    "adjacency_apply", "almost_intersecting", "binom", "binomratio", "bipartite_edge_count",
    "check_gammamax", "colex_rank", "conjecture_reports", "construction_upper_bound", "convert",
    "degree_profile", "eigencomponent_norms", "exact_minimize", "explicit_family", "falling_ratio",
    "greedy_matching", "helper_inequalities", "lex_rank", "linear_profile", "local_search",
    "main_lower_bound", "mixing_bounds", "order_segment", "random_expected_degree", "random_family",
    "rank", "singular_ratio_bound", "size_parameter", "slice_family", "spectrum", "star_densities",
    "stars_max_degree", "thirdorder_bound", "threshold_evaluators", "union_of_stars", "unrank",
]
