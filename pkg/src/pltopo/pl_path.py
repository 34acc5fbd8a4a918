"""PL maps, arcs and circuits encoded by their corner sequences.

A path with corners ``c_0 .. c_k`` is parametrised canonically on ``[0, k]``:
on ``[i-1, i]`` it interpolates linearly between ``c_{i-1}`` and ``c_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .errors import (
    DegeneratePiece,
    EndpointMismatch,
    NotClosed,
    PointNotOnCircuit,
    PreconditionError,
    ValidationError,
)
from .exact_geom import (
    Point,
    Segment,
    VerticalRay,
    as_items,
    contains_point,
    param_of,
    seg_intersection,
)


@dataclass(frozen=True)
class PathLocation:
    """A parameter on a path: ``segment_index`` is 1-based, ``parameter`` in [0, 1]."""

    segment_index: int
    parameter: Fraction
    point: Point

    @property
    def t(self) -> Fraction:
        """Global parameter in ``[0, k]``."""
        return self.segment_index - 1 + self.parameter


def _as_point(c) -> Point:
    if isinstance(c, Point):
        return c
    x, y = c
    return Point(x, y)


@dataclass(frozen=True)
class PLPath:
    corners: tuple
    closed: bool = False

    def __post_init__(self):
        corners = tuple(_as_point(c) for c in self.corners)
        object.__setattr__(self, "corners", corners)
        if len(corners) < 2:
            raise PreconditionError("a PL path needs at least two corners")
        for i in range(1, len(corners)):
            if corners[i] == corners[i - 1]:
                raise DegeneratePiece(f"corners {i - 1} and {i} coincide at {corners[i]}")
        if self.closed:
            if corners[0] != corners[-1]:
                raise NotClosed("closed path must end where it starts")
            if len(corners) < 3:
                raise NotClosed("closed path needs at least two pieces")

    @property
    def k(self) -> int:
        return len(self.corners) - 1

    @property
    def start(self) -> Point:
        return self.corners[0]

    @property
    def end(self) -> Point:
        return self.corners[-1]

    def ep(self) -> frozenset:
        return frozenset((self.corners[0], self.corners[-1]))

    @cached_property
    def _segments(self) -> tuple:
        c = self.corners
        return tuple(Segment(c[i - 1], c[i]) for i in range(1, len(c)))

    def segments(self) -> tuple:
        return self._segments

    def segment(self, i: int) -> Segment:
        """The i-th piece, 1-based."""
        return self._segments[i - 1]

    def location(self, t) -> PathLocation:
        t = Fraction(t)
        if t < 0 or t > self.k:
            raise PreconditionError(f"parameter {t} outside [0, {self.k}]")
        i = int(t)  # floor for t >= 0
        if i == self.k:
            return PathLocation(self.k, Fraction(1), self.corners[-1])
        u = t - i
        return PathLocation(i + 1, u, self._segments[i].point_at(u) if u else self.corners[i])

    def point_at(self, t) -> Point:
        return self.location(t).point

    def on_carrier(self, p: Point) -> bool:
        return any(contains_point(s, p) for s in self._segments)

    def locate(self, p: Point) -> Optional[PathLocation]:
        """Smallest-parameter location of ``p`` on the path, if any."""
        for i, s in enumerate(self._segments, 1):
            if contains_point(s, p):
                return _normalised(self, i, param_of(s, p), p)
        return None


def _normalised(f: PLPath, i: int, u: Fraction, p: Point) -> PathLocation:
    if u == 1 and i < f.k:
        return PathLocation(i + 1, Fraction(0), p)
    return PathLocation(i, u, p)


class PLArc(PLPath):
    """An injective open PL path; construction fails on self-intersections."""

    def __post_init__(self):
        super().__post_init__()
        if self.closed:
            raise PreconditionError("an arc is not closed")
        v = validate_arc(self)
        if v is not None:
            raise ValidationError(f"path is not injective near {v.point}", v)


@dataclass(frozen=True)
class PLCircuit(PLPath):
    """A simple closed PL path; construction fails unless it is a circuit."""

    closed: bool = True

    def __post_init__(self):
        super().__post_init__()
        if not self.closed:
            raise NotClosed("a circuit is closed")
        v = validate_circuit(self)
        if v is not None:
            raise ValidationError(f"circuit is not simple near {v.point}", v)


def make_path(corners: Sequence, closed: bool = False) -> PLPath:
    return PLPath(tuple(corners), closed)


def concat(f: PLPath, g: PLPath) -> PLPath:
    """Concatenation ``f + g``; the shared corner appears once."""
    if f.closed or g.closed:
        raise PreconditionError("concatenation is defined for open paths")
    if f.end != g.start:
        raise EndpointMismatch(f"{f.end} != {g.start}")
    return PLPath(f.corners + g.corners[1:], False)


def reverse(f: PLPath) -> PLPath:
    return type(f)(tuple(reversed(f.corners)), f.closed)


def close(f: PLPath) -> PLPath:
    """Mark an open path whose ends meet as closed."""
    return PLPath(f.corners, True)


@dataclass(frozen=True)
class Violation:
    loc1: PathLocation
    loc2: PathLocation
    point: Point


def _violation(f: PLPath, i: int, j: int, hit) -> Optional[Violation]:
    si, sj = f.segment(i), f.segment(j)
    if isinstance(hit, Segment):
        cands = [hit.a, hit.b, hit.midpoint()]
    else:
        cands = [hit]
    for p in cands:
        l1 = _normalised(f, i, param_of(si, p), p)
        l2 = _normalised(f, j, param_of(sj, p), p)
        if l1.t == l2.t:
            continue
        if f.closed and {l1.t, l2.t} == {0, f.k}:
            continue
        return Violation(l1, l2, p)
    return None


def _self_intersection(f: PLPath) -> Optional[Violation]:
    """Exhaustive pairwise test; O(k^2) by design."""
    k = f.k
    segs = f.segments()
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            hit = seg_intersection(segs[i - 1], segs[j - 1])
            if hit is None:
                continue
            v = _violation(f, i, j, hit)
            if v is not None:
                return v
    return None


def validate_arc(f: PLPath) -> Optional[Violation]:
    """``None`` when the open path is injective, else a witnessing pair."""
    if f.closed:
        raise PreconditionError("validate_arc expects an open path")
    return _self_intersection(f)


def validate_circuit(f: PLPath) -> Optional[Violation]:
    """``None`` when the closed path is simple (only f(0) = f(k) repeats)."""
    if not f.closed:
        raise PreconditionError("validate_circuit expects a closed path")
    return _self_intersection(f)


def _insert_corner(cyc: list, p: Point) -> None:
    """Insert ``p`` into a cyclic corner list if it falls inside a piece."""
    if p in cyc:
        return
    n = len(cyc)
    for i in range(n):
        a, b = cyc[i], cyc[(i + 1) % n]
        if contains_point(Segment(a, b), p):
            cyc.insert(i + 1, p)
            return
    raise PointNotOnCircuit(f"{p} is not on the circuit")


def split_circuit(f: PLPath, u: Point, v: Point):
    """Cut a circuit at ``u`` and ``v`` into two arcs, both joining u to v.

    The first arc follows the stored orientation from u to v, the second
    continues from v back to u.
    """
    if not f.closed:
        raise PreconditionError("split_circuit expects a closed path")
    if u == v:
        raise PreconditionError("split points must differ")
    cyc = list(f.corners[:-1])
    _insert_corner(cyc, u)
    _insert_corner(cyc, v)
    iu = cyc.index(u)
    cyc = cyc[iu:] + cyc[:iu]
    iv = cyc.index(v)
    return PLArc(tuple(cyc[: iv + 1])), PLArc(tuple(cyc[iv:] + [cyc[0]]))


def split_path_at(f: PLPath, p: Point):
    """Cut an open path at the first location of ``p`` (not an endpoint)."""
    loc = f.locate(p)
    if loc is None:
        raise PointNotOnCircuit(f"{p} is not on the path")
    if loc.t == 0 or loc.t == f.k:
        raise PreconditionError("cannot split a path at its endpoint")
    i = loc.segment_index
    head = f.corners[:i] if loc.parameter == 0 else f.corners[:i] + (p,)
    tail = (p,) + f.corners[i:] if loc.parameter != 0 else f.corners[i - 1:]
    return PLPath(head), PLPath(tail)


def _hit_params(s: Segment, item):
    if isinstance(item, Point):
        return [param_of(s, item)] if contains_point(s, item) else []
    if isinstance(item, VerticalRay):
        item = item.truncated(s.ymin, s.ymax)
    hit = seg_intersection(s, item)
    if hit is None:
        return []
    if isinstance(hit, Point):
        return [param_of(s, hit)]
    return [param_of(s, hit.a), param_of(s, hit.b)]


def first_hit(f: PLPath, X) -> Optional[PathLocation]:
    """Location of the smallest parameter at which ``f`` meets ``X``."""
    items = as_items(X)
    for i, s in enumerate(f.segments(), 1):
        ts = [t for it in items for t in _hit_params(s, it)]
        if ts:
            u = min(ts)
            return _normalised(f, i, u, s.point_at(u))
    return None


def last_hit(f: PLPath, X) -> Optional[PathLocation]:
    """Location of the largest parameter at which ``f`` meets ``X``."""
    items = as_items(X)
    segs = f.segments()
    for i in range(len(segs), 0, -1):
        s = segs[i - 1]
        ts = [t for it in items for t in _hit_params(s, it)]
        if ts:
            u = max(ts)
            return _normalised(f, i, u, s.point_at(u))
    return None


class Extremes(NamedTuple):
    leftmost: Point
    rightmost: Point
    bottom: Point
    top: Point


def extreme_points(f: PLPath) -> Extremes:
    """Extreme carrier points; ties broken lexicographically.

    leftmost: min x then min y; rightmost: max x then max y;
    bottom: min y then min x; top: max y then max x.
    """
    cs = f.corners
    return Extremes(
        leftmost=min(cs, key=lambda p: (p.x, p.y)),
        rightmost=max(cs, key=lambda p: (p.x, p.y)),
        bottom=min(cs, key=lambda p: (p.y, p.x)),
        top=max(cs, key=lambda p: (p.y, p.x)),
    )


def signed_area(f: PLPath) -> Fraction:
    """Shoelace area; positive for counterclockwise circuits."""
    if not f.closed:
        raise PreconditionError("signed_area expects a closed path")
    c = f.corners
    s = Fraction(0)
    for i in range(1, len(c)):
        s += c[i - 1].x * c[i].y - c[i].x * c[i - 1].y
    return s / 2


def ccw(f: PLPath) -> PLPath:
    """The same circuit, oriented counterclockwise."""
    return f if signed_area(f) > 0 else reverse(f)
