"""
Exact minimisers at desk scale
==============================

Branch and bound with relabelling symmetry finds the least possible
maximum degree (or edge count) among all m-member families of a small
Kneser graph, and the greedy matching routine is checked against brute force.
"""

from kneser import Family, degree_profile, exact_minimize, greedy_matching, order_segment
from kneser.search import max_matching_size

# The lex segment is edge-optimal at m = 5 but not at m = 6; the
# edge-count result for lex only applies once n is large.
for m in range(1, 11):
    deg = exact_minimize(5, 2, m, "max_degree")
    edges = exact_minimize(5, 2, m, "edge_count")
    lex = order_segment("lex", 5, 2, m)
    lex_edges = degree_profile(lex).edge_count
    print(f"m={m:2d}  min max-degree {deg.optimum}  min edges {edges.optimum}  lex edges {lex_edges}")

# Witnesses are the colex-least optimal families.
print(exact_minimize(5, 2, 7).witness.sets())
res = exact_minimize(6, 2, 8, "edge_count")
print("K(6,2), m=8: optimum", res.optimum, "nodes", res.nodes_explored)

F = Family.from_sets(7, 2, [(1, 2), (3, 4), (5, 6), (1, 7), (2, 3)])
g = greedy_matching(F)
print("greedy matching", g.members, "maximum", max_matching_size(F))
