"""
Plane projections of space curves
=================================

A linear projection of a space curve germ may or may not keep the
embedded topology.  ``is_generic`` decides it exactly from the Puiseux
coefficients; ``find_generic_direction`` searches small integer vectors.
"""

from curvelab.carrousel_tree import canonical_code, curve_tree
from curvelab.projection import (
    candidate_directions,
    find_generic_direction,
    format_direction,
    is_generic,
    parse_space_curve,
    project,
)
from curvelab.puiseux import render_curve

S1 = parse_space_curve("param (w^2, w^3, w^5)")
S2 = parse_space_curve("param (w, w^2, w^2)\nparam (w, w^2, -w^2)")

for name, sc in (("S1", S1), ("S2", S2)):
    print(name)
    for d in [(1, 0), (0, 1), (1, 1)]:
        print("  ", format_direction(d), is_generic(sc, d))
    d = find_generic_direction(sc)
    print("   first generic direction", format_direction(d))
    print("  ", render_curve(project(sc, d).curve).strip().replace("\n", "; "))

# the topology of a generic projection does not depend on the direction
codes = {}
for d in candidate_directions(2, max_norm=2):
    if is_generic(S1, d).generic:
        codes.setdefault(canonical_code(curve_tree(project(S1, d).curve)), []).append(d)
print(codes)
