"""
Spectral profile of small Kneser families
=========================================

The Petersen graph K(5,2) has eigenvalues 3, -2 and 1. Every family of
2-sets splits into components along those eigenspaces, and the squared
component norms pin down every walk count inside the family.
"""

from fractions import Fraction

from kneser import Family, eigencomponent_norms, linear_profile, spectrum
from kneser.spectral import adjacency_moments

table = spectrum(5, 2)
print("eigenvalues   ", table.eigenvalues)
print("multiplicities", table.multiplicities)

# A star is independent, and all of its mass sits on the two lowest levels.
star = Family.star(5, 2, 1)
print("star norms", [str(x) for x in eigencomponent_norms(star)])

# Adding a single set disjoint from 1 costs two edges and moves weight up.
F = Family.from_sets(5, 2, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3)])
prof = linear_profile(F)
print("alpha", prof.alpha, "eta", prof.eta)
print("star densities", [str(g) for g in prof.gamma])

# The norms reproduce <f, A^j f> for every j, exactly.
norms = eigencomponent_norms(F)
for j, moment in enumerate(adjacency_moments(F)):
    predicted = sum((lam**j * x for lam, x in zip(table.eigenvalues, norms)), Fraction(0))
    print(f"j={j}: walk count {moment}, from the spectrum {predicted}")
