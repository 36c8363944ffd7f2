"""Slice the 3-torus: lines against rank-2 subtori, exactly.

A saturated rank-2 lattice spans a closed 2-dimensional subtorus.  A line
that is not parallel to it punches through finitely often; the count is
computed from a Smith normal form and cross-checked here against the
primitive normal vector of the plane.  Everything is transported through a
unimodular automorphism at the end, which preserves all of the structure.
"""

from fractions import Fraction

from torusaffine import (
    AffineTorusAuto,
    RatPoint,
    RationalSubtorus,
    contains_point,
    hnf,
    image_subtorus,
    intersect_subtori,
    line_as_subtorus,
    line_subtorus_count,
    line_through,
    origin,
    point,
    smith_invariants,
)
from torusaffine.intmat import from_columns

plane = RationalSubtorus(origin(3), hnf([(1, 0, 1), (0, 1, 2)]))
w1, w2 = plane.lattice.vectors
normal = (
    w1[1] * w2[2] - w1[2] * w2[1],
    w1[2] * w2[0] - w1[0] * w2[2],
    w1[0] * w2[1] - w1[1] * w2[0],
)
print(f"plane spanned by {w1} and {w2}, normal vector {normal}")

for direction in ((0, 0, 1), (1, 1, 1), (2, -1, 3), (1, 2, 0)):
    line = line_through(origin(3), direction)
    count = line_subtorus_count(line, plane)
    pairing = sum(a * b for a, b in zip(normal, direction))
    print(f"  line along {direction}: meets the plane {count} times "
          f"(normal pairing {pairing})")

decomposition = intersect_subtori(
    line_as_subtorus(line_through(origin(3), (2, -1, 3))), plane
)
print(f"\ntransversal intersection: {decomposition.component_count} points, "
      f"one of them {decomposition.representative}")

shifted = RationalSubtorus(point("0", "0", "1/2"), plane.lattice)
parallel = line_through(point("0", "0", "1/4"), (1, 0, 1))
print(f"shifted plane against a parallel line off it: "
      f"{line_subtorus_count(parallel, shifted)} intersections")
on_it = line_through(point("0", "0", "1/2"), (1, 0, 1))
print(f"same plane against a parallel line inside it: "
      f"{line_subtorus_count(on_it, shifted)} intersections")

phi = AffineTorusAuto(
    ((1, 1, 0), (0, 1, 1), (0, 0, 1)),
    RatPoint((Fraction(1, 3), Fraction(0), Fraction(0))),
)
image = image_subtorus(shifted, phi)
print(f"\nimage under a unimodular shear: base {image.base}, "
      f"basis {image.lattice.vectors}")
print(f"  still saturated: "
      f"{all(d == 1 for d in smith_invariants(from_columns(image.lattice.vectors)))}")
probe = point("1/2", "1/2", "1/2")
print(f"  membership transported correctly for {probe}: "
      f"{contains_point(shifted, probe) == contains_point(image, phi.apply(probe))}")
