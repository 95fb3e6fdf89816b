"""
Recovering the tree from numbers
================================

Sample the sheets on a geometric grid of t, fit log-log slopes of the
pairwise distances and rebuild the carrousel tree from the rounded slopes.
The ratio experiment compares two curves with the same topology but a
different leading coefficient.
"""

import numpy as np

from curvelab import probe
from curvelab.carrousel_tree import canonical_code, curve_tree
from curvelab.contact import q_map
from curvelab.parsing import parse_curve

E = parse_curve("y = x^(3/2) + x^(13/6)\ny = x^(7/3)")
est = probe.estimate_qmap(E)
exact = np.array([[float(v) for v in row] for row in q_map(E).q])
mask = ~np.eye(9, dtype=bool)
print("max slope error", np.max(np.abs(est.q[mask] - exact[mask])))

rec = probe.recover_tree_numeric(probe.sample_grid(E))
print(canonical_code(rec.tree))
print(canonical_code(curve_tree(E)))

# the distance ratio tends to |a| / |b| at the first exponent where the sheets differ
c1 = parse_curve("y = x^(3/2) + x^(13/6)")
c2 = parse_curve("y = 2x^(3/2) + x^(13/6)")
for p in probe.bilipschitz_ratio_experiment(c1, c2).pairs:
    print(p.sheets, p.i0, round(p.fitted, 4), p.predicted)

# a finer grid moves the fit closer to the exact value
fine = probe.SampleGrid.geometric(tmax=1e-4, tmin=1e-8, count=20)
print("fine grid error", np.max(np.abs(probe.estimate_qmap(E, fine).q[mask] - exact[mask])))
