"""
Sections x = t and the carrousel pieces
=======================================

Draw the sections of the two-branch curve at three values of t and watch
the clusters shrink at their own rates.  SVG files go to ``demos/out``.
"""

from itertools import combinations
from pathlib import Path

import numpy as np

from curvelab import carrousel_geom as geom
from curvelab.parsing import parse_curve

E = parse_curve("y = x^(3/2) + x^(13/6)\ny = x^(7/3)")
dec = geom.decompose(E)
print(geom.inventory_text(dec))

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)
ts = [0.1, 0.05, 0.025, 1 / 128]
for t in ts:
    (out / f"section-{t:g}.svg").write_text(geom.render_section(dec, t))
    print(t, geom.check_section(dec, t) or "all pieces nested")

# the nominal constants are only guaranteed for small t
print("largest verified t:", geom.largest_verified_t(dec))

# cluster separation ~ t^(3/2), cluster diameter ~ t^(13/6)
sep, diam = [], []
for t in ts:
    pts = [geom.sheet_point(dec, j, t) for j in range(len(dec.sheets))]
    a, b = pts[0:6:2], pts[1:6:2]  # the two branch-1 triples
    sep.append(abs(np.mean(a) - np.mean(b)))
    diam.append(max(abs(p - q) for p, q in combinations(a, 2)))
logt = np.log(ts)
print("separation slope", np.polyfit(logt, np.log(sep), 1)[0])
print("diameter slope", np.polyfit(logt, np.log(diam), 1)[0], 13 / 6)

# two equivalent curves get matching pieces
pairing = geom.align_decompositions(parse_curve("y = x^(3/2)"), parse_curve("y = x^(3/2) + x^2"))
print("inserted:", pairing.insertions)
print(len(pairing.pairs), "paired pieces")
