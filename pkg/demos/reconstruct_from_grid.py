"""Recover an affine map from nothing but its value table on a grid.

A bijection of the m-grid that maps every discrete line onto a discrete
line is pinned down by an integer matrix mod m plus a translation.  The
inference below never sees the matrix: it probes how the map transforms
directions at 0 and then verifies the affine model pointwise.  Breaking a
single value destroys line preservation, and the same machinery then emits
a short certificate instead.
"""

from torusaffine import GridMap, emit_torusmap, infer_affine
from torusaffine.cli import generate_map

f = generate_map(n=2, m=8, seed=42, kind="affine")
print("value table (first lines of the interchange format):")
for row in emit_torusmap(f).splitlines()[:6]:
    print("  " + row)
print("  ...")

phi = infer_affine(f)
print("\nrecovered model:")
for row in phi.matrix:
    print(f"  A {row}")
print(f"  b {phi.translation}")
assert GridMap.from_affine(phi, f.n, f.m) == f
print("model reproduces all 64 table entries")

# now damage one value pair and ask again
g = generate_map(n=2, m=8, seed=42, kind="perturbed")
changed = sum(a != b for a, b in zip(f.images, g.images))
print(f"\nafter swapping one pair of images ({changed} entries differ):")
verdict = infer_affine(g)
print(f"  three points of the line {verdict.line.base} + t*{verdict.line.generator}:")
for p in verdict.points:
    print(f"    {p} -> {g.image_of(p)}")
print("  the three images lie on no discrete line, so no affine map")
print(f"  (certificate checks out: {verdict.validate(g)})")
