"""
Families with few disjoint pairs
================================

For a size between s and s+1 stars, the explicit construction keeps every
set meeting [s+1] twice and spreads the rest evenly over the s+1 stars.
Its maximum degree stays under the closed-form upper bound.
"""

from fractions import Fraction

from kneser import (
    ConstructionSpec,
    construction_upper_bound,
    degree_profile,
    explicit_family,
    random_expected_degree,
    random_family,
    union_of_stars,
)

spec = ConstructionSpec(24, 2, 1, Fraction(3, 2))
F, t = explicit_family(spec)
bound = construction_upper_bound(24, 2, 1, spec.lam)
print(f"explicit: size {len(F)}, threshold t={t}, max degree {degree_profile(F).max_degree}, bound {bound.display()}")

# The random variant keeps each one-star set with probability lambda/(s+1).
degrees = []
for seed in range(20):
    G = random_family(ConstructionSpec(40, 2, 1, Fraction(3, 2), seed))
    prof = degree_profile(G)
    single = [d for a, d in zip(G.masks, prof.degrees) if (a & 0b11).bit_count() == 1]
    degrees.append(sum(single) / len(single))
print("random: mean one-star degree", round(sum(degrees) / len(degrees), 3),
      "expected", random_expected_degree(40, 2, 1, Fraction(3, 2)))

# Unions of stars are the natural competitors at integral lambda.
for s in (1, 2, 3):
    U = union_of_stars(12, 3, range(1, s + 1))
    print(f"{s} stars in K(12,3): size {len(U)}, max degree {degree_profile(U).max_degree}")
