"""Exact rational points, segments, vertical rays and the predicates on them.

Every coordinate is a :class:`fractions.Fraction`; nothing here ever rounds.
Distances are reported squared so that they stay rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

from .errors import DegeneratePiece, EmptyInput

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if type(self.x) is not Fraction:
            object.__setattr__(self, "x", as_rational(self.x))
        if type(self.y) is not Fraction:
            object.__setattr__(self, "y", as_rational(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def pt(x, y) -> Point:
    return Point(as_rational(x), as_rational(y))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise DegeneratePiece(f"segment endpoints coincide at {self.a}")
        # Bounding box, cached for the cheap rejection tests below.
        object.__setattr__(self, "xmin", min(self.a.x, self.b.x))
        object.__setattr__(self, "xmax", max(self.a.x, self.b.x))
        object.__setattr__(self, "ymin", min(self.a.y, self.b.y))
        object.__setattr__(self, "ymax", max(self.a.y, self.b.y))

    def __repr__(self):
        return f"Segment({self.a.x},{self.a.y} -> {self.b.x},{self.b.y})"

    @property
    def vertical(self) -> bool:
        return self.a.x == self.b.x

    def point_at(self, t: Fraction) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))

    def midpoint(self) -> Point:
        return midpoint(self.a, self.b)


class Direction(enum.Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class VerticalRay:
    """Closed vertical half-line; the origin belongs to the ray."""

    origin: Point
    direction: Direction = Direction.UP

    def contains(self, p: Point) -> bool:
        if p.x != self.origin.x:
            return False
        if self.direction is Direction.UP:
            return p.y >= self.origin.y
        return p.y <= self.origin.y

    def truncated(self, ylo: Fraction, yhi: Fraction) -> Segment:
        """A finite piece of the ray long enough to cover the band ``[ylo, yhi]``."""
        o = self.origin
        if self.direction is Direction.UP:
            return Segment(o, Point(o.x, max(o.y, yhi) + 1))
        return Segment(o, Point(o.x, min(o.y, ylo) - 1))


GeomItem = Union[Point, Segment, VerticalRay]


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def sq_dist(p: Point, q: Point) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p).

    +1 when ``r`` is strictly left of the directed line p->q, -1 when strictly
    right, 0 when the three points are collinear.
    """
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def _boxes_disjoint(s: Segment, t: Segment) -> bool:
    return s.xmax < t.xmin or t.xmax < s.xmin or s.ymax < t.ymin or t.ymax < s.ymin


def contains_point(s: Segment, p: Point) -> bool:
    """True iff ``p`` lies on the closed segment ``s``."""
    if p.x < s.xmin or p.x > s.xmax or p.y < s.ymin or p.y > s.ymax:
        return False
    return orient(s.a, s.b, p) == 0


def param_of(s: Segment, p: Point) -> Fraction:
    """Parameter in [0, 1] of a point known to lie on ``s``."""
    if s.a.x != s.b.x:
        return (p.x - s.a.x) / (s.b.x - s.a.x)
    return (p.y - s.a.y) / (s.b.y - s.a.y)


def seg_intersection(s: Segment, t: Segment):
    """Exact intersection of two closed segments.

    Returns ``None`` when they are disjoint, a :class:`Point` for a single
    common point, or a :class:`Segment` (endpoints in lexicographic order)
    when collinear segments share more than one point.
    """
    if _boxes_disjoint(s, t):
        return None
    p, q, r, u = s.a, s.b, t.a, t.b
    d1 = orient(p, q, r)
    d2 = orient(p, q, u)
    if d1 == 0 and d2 == 0:
        s_lo, s_hi = sorted((p, q))
        t_lo, t_hi = sorted((r, u))
        lo = max(s_lo, t_lo)
        hi = min(s_hi, t_hi)
        if lo > hi:
            return None
        if lo == hi:
            return lo
        return Segment(lo, hi)
    if d1 * d2 > 0:
        return None
    d3 = orient(r, u, p)
    d4 = orient(r, u, q)
    if d3 * d4 > 0:
        return None
    if d1 == 0:
        return r
    if d2 == 0:
        return u
    if d3 == 0:
        return p
    if d4 == 0:
        return q
    ex, ey = q.x - p.x, q.y - p.y
    fx, fy = u.x - r.x, u.y - r.y
    lam = ((r.x - p.x) * fy - (r.y - p.y) * fx) / (ex * fy - ey * fx)
    return Point(p.x + lam * ex, p.y + lam * ey)


# -- squared distances between primitive items ------------------------------

def _pt_seg2(p: Point, s: Segment) -> Fraction:
    dx = s.b.x - s.a.x
    dy = s.b.y - s.a.y
    t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / (dx * dx + dy * dy)
    if t <= 0:
        return sq_dist(p, s.a)
    if t >= 1:
        return sq_dist(p, s.b)
    return sq_dist(p, Point(s.a.x + t * dx, s.a.y + t * dy))


def _pt_ray2(p: Point, ray: VerticalRay) -> Fraction:
    o = ray.origin
    above = p.y >= o.y if ray.direction is Direction.UP else p.y <= o.y
    if above:
        dx = p.x - o.x
        return dx * dx
    return sq_dist(p, o)


def _seg_seg2(s: Segment, t: Segment) -> Fraction:
    if seg_intersection(s, t) is not None:
        return Fraction(0)
    return min(_pt_seg2(s.a, t), _pt_seg2(s.b, t), _pt_seg2(t.a, s), _pt_seg2(t.b, s))


def _seg_ray2(s: Segment, ray: VerticalRay) -> Fraction:
    if seg_intersection(s, ray.truncated(s.ymin, s.ymax)) is not None:
        return Fraction(0)
    return min(_pt_ray2(s.a, ray), _pt_ray2(s.b, ray), _pt_seg2(ray.origin, s))


def _ray_ray2(r1: VerticalRay, r2: VerticalRay) -> Fraction:
    dx = r1.origin.x - r2.origin.x
    if r1.direction is r2.direction:
        return dx * dx
    up, down = (r1, r2) if r1.direction is Direction.UP else (r2, r1)
    gap = max(Fraction(0), up.origin.y - down.origin.y)
    return dx * dx + gap * gap


def item_dist2(i: GeomItem, j: GeomItem) -> Fraction:
    if isinstance(i, Point):
        if isinstance(j, Point):
            return sq_dist(i, j)
        if isinstance(j, Segment):
            return _pt_seg2(i, j)
        return _pt_ray2(i, j)
    if isinstance(i, Segment):
        if isinstance(j, Point):
            return _pt_seg2(j, i)
        if isinstance(j, Segment):
            return _seg_seg2(i, j)
        return _seg_ray2(i, j)
    if isinstance(j, Point):
        return _pt_ray2(j, i)
    if isinstance(j, Segment):
        return _seg_ray2(j, i)
    return _ray_ray2(i, j)


def common_point(i: GeomItem, j: GeomItem):
    """Some point shared by two items, or ``None`` when they are disjoint."""
    if isinstance(i, Point) or isinstance(j, Point):
        p, other = (i, j) if isinstance(i, Point) else (j, i)
        if isinstance(other, Point):
            return p if p == other else None
        if isinstance(other, Segment):
            return p if contains_point(other, p) else None
        return p if other.contains(p) else None
    if isinstance(i, VerticalRay) and isinstance(j, VerticalRay):
        if i.origin.x != j.origin.x:
            return None
        if i.contains(j.origin):
            return j.origin
        if j.contains(i.origin):
            return i.origin
        return None
    if isinstance(i, VerticalRay):
        i = i.truncated(j.ymin, j.ymax)
    if isinstance(j, VerticalRay):
        j = j.truncated(i.ymin, i.ymax)
    hit = seg_intersection(i, j)
    if isinstance(hit, Segment):
        return hit.a
    return hit


def as_items(X) -> tuple:
    """Normalise a geometric set: a single item, a PL path, or an iterable."""
    if isinstance(X, (Point, Segment, VerticalRay)):
        return (X,)
    segs = getattr(X, "segments", None)
    if callable(segs):
        return tuple(segs())
    items = []
    for it in X:
        items.extend(as_items(it))
    return tuple(items)


def dist2(A, B) -> Fraction:
    """Exact squared distance between two finite unions of items.

    Zero exactly when the two sets meet.
    """
    a_items = as_items(A)
    b_items = as_items(B)
    if not a_items or not b_items:
        raise EmptyInput("dist2 needs two nonempty sets")
    best = None
    for i in a_items:
        for j in b_items:
            d = item_dist2(i, j)
            if best is None or d < best:
                best = d
                if d == 0:
                    return d
    return best


def bbox(points: Iterable[Point]):
    pts = list(points)
    if not pts:
        raise EmptyInput("bounding box of nothing")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def sqrt_lower(q: Fraction, rel_bits: int = 16) -> Fraction:
    """A rational lower bound on sqrt(q) with relative error below 2**-rel_bits.

    Exact whenever q is the square of a rational.
    """
    q = as_rational(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return Fraction(0)
    n = q.numerator * q.denominator
    m = max(0, rel_bits + 1 - n.bit_length() // 2)
    return Fraction(isqrt(n << (2 * m)), q.denominator << m)
