"""Rational points, rational lines and block configurations on the torus.

The torus is T^n = R^n / Z^n.  Points carry reduced rational coordinates in
[0,1).  A rational line is a coset of a one-parameter rational subgroup:
``{[base + t * direction] : t in R}`` with a primitive integer direction.
Lines are canonicalized on construction (direction sign-canonical, base
moved to the canonical transversal slice), so two lines are equal as sets
exactly when they compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .intmat import from_columns, frac_matvec, inverse_unimodular, matvec
from .lattice import complete_to_unimodular, primitive_part, snf_decomposition


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class RatPoint:
    """A point of T^n; coordinates are reduced into [0,1) on construction."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(_frac(c) % 1 for c in self.coords)
        )

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def point(*coords) -> RatPoint:
    """Convenience constructor: point(1, 2) etc. accepts ints, Fractions or
    'p/q' strings."""
    return RatPoint(tuple(Fraction(c) for c in coords))


def origin(n: int) -> RatPoint:
    return RatPoint((Fraction(0),) * n)


@lru_cache(maxsize=None)
def _direction_frames(direction: tuple[int, ...]):
    """(u, u_inv) for the fixed unimodular completion of a direction."""
    u = complete_to_unimodular(direction)
    return u, inverse_unimodular(u)


@dataclass(frozen=True)
class RationalLine:
    """A rational line, stored in canonical form.

    ``direction`` is primitive with positive first nonzero entry.  ``base``
    is the canonical representative of the coset: writing the point in the
    coordinates of the fixed unimodular completion of the direction, the
    along-line coordinate is zeroed and the rest reduced into [0,1).
    """

    base: RatPoint
    direction: tuple[int, ...]

    def __post_init__(self):
        direction, _ = primitive_part(self.direction)
        base = self.base if isinstance(self.base, RatPoint) else RatPoint(tuple(self.base))
        if base.dim != len(direction):
            raise ValueError("base and direction dimensions differ")
        u, u_inv = _direction_frames(direction)
        sliced = frac_matvec(u_inv, base.coords)
        sliced = (Fraction(0),) + sliced[1:]
        object.__setattr__(self, "base", RatPoint(frac_matvec(u, sliced)))
        object.__setattr__(self, "direction", direction)

    @property
    def dim(self) -> int:
        return len(self.direction)


def line_through(p: RatPoint | Sequence, direction: Sequence[int]) -> RationalLine:
    """The rational line through p with the given nonzero integer direction.

    Raises ValueError("no direction") for the zero vector.
    """
    if all(int(x) == 0 for x in direction):
        raise ValueError("no direction")
    base = p if isinstance(p, RatPoint) else RatPoint(tuple(_frac(c) for c in p))
    return RationalLine(base=base, direction=tuple(int(x) for x in direction))


def contains(line: RationalLine, p: RatPoint) -> bool:
    """Exact membership test of a point on a line."""
    if p.dim != line.dim:
        raise ValueError("dimension mismatch")
    _, u_inv = _direction_frames(line.direction)
    delta = tuple(a - b for a, b in zip(p.coords, line.base.coords))
    z = frac_matvec(u_inv, delta)
    return all(c.denominator == 1 for c in z[1:])


def are_parallel(l1: RationalLine, l2: RationalLine) -> bool:
    """True when the directions agree up to sign (equal lines included)."""
    return l1.direction == l2.direction


@dataclass(frozen=True)
class IntersectionCount:
    """Cardinality of an intersection: a finite count or infinity."""

    count: int | None  # None encodes an infinite intersection

    @classmethod
    def finite(cls, k: int) -> "IntersectionCount":
        if k < 0:
            raise ValueError("negative count")
        return cls(count=k)

    @classmethod
    def infinite(cls) -> "IntersectionCount":
        return cls(count=None)

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    def __str__(self) -> str:
        return "infinite" if self.is_infinite else str(self.count)


def intersection_count_2d(l1: RationalLine, l2: RationalLine) -> IntersectionCount:
    """Number of intersection points of two rational lines on T^2.

    Non-parallel lines meet in exactly |det(v1 v2)| points; parallel lines
    meet nowhere or coincide.
    """
    if l1.dim != 2 or l2.dim != 2:
        raise ValueError("T^2 lines required")
    if are_parallel(l1, l2):
        if l1 == l2:
            return IntersectionCount.infinite()
        return IntersectionCount.finite(0)
    (p1, q1), (p2, q2) = l1.direction, l2.direction
    return IntersectionCount.finite(abs(p1 * q2 - q1 * p2))


def intersection_points(l1: RationalLine, l2: RationalLine) -> tuple[RatPoint, ...]:
    """The exact, duplicate-free intersection of two distinct rational lines.

    Sorted lexicographically by coordinates.  Equal lines are refused
    (ValueError "infinite intersection"); parallel distinct lines give ().
    In T^n with n > 2 the result may be empty even for non-parallel lines.
    """
    if l1.dim != l2.dim:
        raise ValueError("dimension mismatch")
    if l1 == l2:
        raise ValueError("infinite intersection")
    if are_parallel(l1, l2):
        return ()
    n = l1.dim
    v1, v2 = l1.direction, l2.direction
    mat = from_columns([v1, tuple(-x for x in v2)])
    d, u, u_inv, v, v_inv = snf_decomposition(mat)
    delta = tuple(
        b - a for a, b in zip(l1.base.coords, l2.base.coords)
    )
    e = frac_matvec(u, delta)
    for i in range(2, n):
        if e[i].denominator != 1:
            return ()
    d0, d1 = d[0][0], d[1][1]
    found = set()
    for w0 in range(d0):
        for w1 in range(d1):
            y = ((e[0] + w0) / d0, (e[1] + w1) / d1)
            t = v[0][0] * y[0] + v[0][1] * y[1]
            pt = RatPoint(
                tuple(b + t * x for b, x in zip(l1.base.coords, v1))
            )
            found.add(pt)
    return tuple(sorted(found, key=lambda p: p.coords))


def line_hyperplane_count(line: RationalLine, axis: int) -> IntersectionCount:
    """Intersection count of a line with the coordinate hyperplane
    {x_axis = 0} (the subtorus spanned by the other coordinate directions).

    ``axis`` is 0-based.  A line crossing the hyperplane transversally
    meets it in |direction[axis]| points.
    """
    if not 0 <= axis < line.dim:
        raise ValueError("axis out of range")
    comp = line.direction[axis]
    if comp != 0:
        return IntersectionCount.finite(abs(comp))
    if line.base.coords[axis] == 0:
        return IntersectionCount.infinite()
    return IntersectionCount.finite(0)


def line_grid_points(line: RationalLine, m: int) -> tuple[RatPoint, ...]:
    """The trace of a line on the grid of denominator-m points.

    Nonempty exactly when the canonical base lies on the grid, in which
    case it consists of the m points base + (k/m) * direction.  Sorted
    lexicographically.
    """
    if m < 1:
        raise ValueError("positive modulus required")
    if any(m % c.denominator != 0 for c in line.base.coords):
        return ()
    pts = set()
    for k in range(m):
        pts.add(
            RatPoint(
                tuple(
                    b + Fraction(k * x, m)
                    for b, x in zip(line.base.coords, line.direction)
                )
            )
        )
    return tuple(sorted(pts, key=lambda p: p.coords))


def reflect_x(line: RationalLine) -> RationalLine:
    """Image of a T^2 line under the reflection (x, y) -> (x, -y)."""
    if line.dim != 2:
        raise ValueError("T^2 line required")
    bx, by = line.base.coords
    p, q = line.direction
    return line_through(RatPoint((bx, -by)), (p, -q))


def _slope_match(a: RatPoint, b: RatPoint, sign: int) -> bool:
    # a and b lie on a common line of slope +-1
    dx = b.coords[0] - a.coords[0]
    dy = b.coords[1] - a.coords[1]
    return (dx - sign * dy) % 1 == 0


def is_block(p1: RatPoint, p2: RatPoint, p3: RatPoint, p4: RatPoint) -> bool:
    """Do the four T^2 points form a block under some labeling (P,Q,R,S)?

    The labeling must satisfy: P,Q on one horizontal line and R,S on
    another; P,R on one vertical line and Q,S on another; P,S on a line of
    slope 1 and Q,R on a line of slope -1.  Duplicate points never form a
    block.
    """
    pts = (p1, p2, p3, p4)
    if any(p.dim != 2 for p in pts):
        raise ValueError("T^2 points required")
    if len(set(pts)) != 4:
        return False
    for pp, qq, rr, ss in permutations(pts):
        if (
            pp.coords[1] == qq.coords[1]
            and rr.coords[1] == ss.coords[1]
            and pp.coords[0] == rr.coords[0]
            and qq.coords[0] == ss.coords[0]
            and _slope_match(pp, ss, 1)
            and _slope_match(qq, rr, -1)
        ):
            return True
    return False


def block_criterion(x0, x1, y0, y1) -> bool:
    """Closed-form test: the four points (x_i, y_j) form a block iff
    x1 - x0 = +-(y1 - y0) on the circle.  Requires x0 != x1 and y0 != y1."""
    x0, x1, y0, y1 = _frac(x0) % 1, _frac(x1) % 1, _frac(y0) % 1, _frac(y1) % 1
    if x0 == x1 or y0 == y1:
        raise ValueError("degenerate rectangle")
    dx = (x1 - x0) % 1
    dy = (y1 - y0) % 1
    return dx == dy or (dx + dy) % 1 == 0
