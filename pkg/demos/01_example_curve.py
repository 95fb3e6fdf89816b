"""
Invariants of a two-branch curve
================================

Two branches, y = x^(3/2) + x^(13/6) and y = x^(7/3).  We compute the
contact exponents, the carrousel tree, its Eggers reduction and the splice
diagram, then check the diagram against intersection multiplicities.
"""

from itertools import combinations

from curvelab.carrousel_tree import canonical_code, curve_eggers, curve_tree, eggers_to_text
from curvelab.contact import intersection_multiplicity, q_map
from curvelab.parsing import parse_curve
from curvelab.splice import build_splice, edge_determinants, generic_branch_checks, linking_number, splice_to_text

E = parse_curve("y = x^(3/2) + x^(13/6)\ny = x^(7/3)")
print("multiplicity", E.multiplicity)

# contact exponents between the 9 sheets
qm = q_map(E)
print("contact values:", sorted(qm.values()))

# the carrousel tree groups sheets by contact
tree = curve_tree(E, qm)
print(canonical_code(tree))

# reduce by the Galois action and decorate every vertex with (m, n, r, s)
eg = curve_eggers(E, qm)
print(eggers_to_text(eg))

# splice diagram; edge weights come from the Eggers decorations
d = build_splice(eg)
print(splice_to_text(d))

# linking numbers of arrows must equal intersection multiplicities
for a, b in combinations(range(len(E)), 2):
    print(a + 1, b + 1, linking_number(d, d.arrow_of(a).id, d.arrow_of(b).id), intersection_multiplicity(E, a, b))

# every edge determinant is positive
print([det for _, det in edge_determinants(d)])

# a branch placed generically at each stubbed vertex checks the bottom weights
for chk in generic_branch_checks(E, d):
    print(chk.multiplicity, "=", chk.r, "*", chk.stub_linking, chk.ok)
