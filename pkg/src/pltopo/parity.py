"""Parity of an upward vertical ray against a PL map.

The ray from ``c`` is pulled back to parameter space: its preimage under the
path is a finite union of points and runs of whole vertical pieces.  Each
maximal component is *simple* when the path arrives and leaves on different
sides of the ray, *double* otherwise.  The parity is the number of simple
components mod 2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyStrip, OutsideStrip, PointOnCurve
from .exact_geom import Point, contains_point
from .pl_path import PathLocation, PLPath


class Side(enum.Enum):
    L = "L"
    R = "R"


class Classification(enum.Enum):
    SIMPLE = "Simple"
    DOUBLE = "Double"


class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_CURVE = "on-curve"


@dataclass(frozen=True)
class RayComponent:
    start: PathLocation
    end: PathLocation
    wraps: bool
    side_before: Side
    side_after: Side

    @property
    def classification(self) -> Classification:
        if self.side_before is self.side_after:
            return Classification.DOUBLE
        return Classification.SIMPLE

    @property
    def is_point(self) -> bool:
        return not self.wraps and self.start.t == self.end.t


@dataclass(frozen=True)
class RayDecomposition:
    query: Point
    path: PLPath
    components: tuple
    simple_count: int
    parity: int
    # Side letter at the start of every gap between components; for open
    # paths the first letter is the side of the first corner.
    gap_word: tuple

    @property
    def one_sided_gaps(self) -> bool:
        """Whether every gap stays on one side of the line x = c_x.

        Exactly then do consecutive gap letters differ precisely at the simple
        components (the situation of the below-all property).
        """
        comps = self.components
        if not comps:
            return True
        n = len(comps)
        if self.path.closed:
            return all(comps[i].side_after is comps[(i + 1) % n].side_before for i in range(n))
        first = self.gap_word[0]
        last = _side(self.path.corners[-1].x, self.query.x)
        return (
            first is comps[0].side_before
            and all(comps[i].side_after is comps[i + 1].side_before for i in range(n - 1))
            and comps[-1].side_after is last
        )


def _side(x: Fraction, cx: Fraction) -> Side:
    return Side.L if x < cx else Side.R


def check_domain(c: Point, f: PLPath) -> None:
    """Raise unless ``c`` lies in the parity domain of ``f``."""
    if any(contains_point(s, c) for s in f.segments()):
        raise PointOnCurve(f"{c} lies on the path")
    if not f.closed:
        x0, x1 = f.corners[0].x, f.corners[-1].x
        if x0 == x1:
            raise EmptyStrip("path endpoints share an x-coordinate")
        lo, hi = min(x0, x1), max(x0, x1)
        if not lo < c.x < hi:
            raise OutsideStrip(f"{c} is not strictly between x={lo} and x={hi}")


def _preimage_intervals(c: Point, f: PLPath):
    """Merged parameter intervals ``[lo, hi]`` mapped into the ray."""
    cx, cy = c.x, c.y
    P = f.corners
    hits = []
    for i in range(1, len(P)):
        a, b = P[i - 1], P[i]
        if a.x == b.x:
            # c is off the carrier, so a vertical piece on the line is wholly
            # above or wholly below c.
            if a.x == cx and a.y > cy:
                hits.append((Fraction(i - 1), Fraction(i)))
        else:
            da, db = a.x - cx, b.x - cx
            if (da <= 0 <= db) or (db <= 0 <= da):
                u = -da / (b.x - a.x)
                if a.y + u * (b.y - a.y) > cy:
                    t = i - 1 + u
                    hits.append((t, t))
    hits.sort()
    merged = []
    for lo, hi in hits:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return merged


def ray_decomposition(c: Point, f: PLPath) -> RayDecomposition:
    """Decompose ``f^{-1}[ray(c)]`` into classified components."""
    check_domain(c, f)
    P = f.corners
    k = f.k
    cx = c.x
    merged = _preimage_intervals(c, f)

    def before(lo: Fraction) -> Side:
        if lo.denominator == 1:
            j = int(lo)
            prev = P[j - 1] if j > 0 else P[k - 1]
            return _side(prev.x, cx)
        return _side(P[int(lo)].x, cx)

    def after(hi: Fraction) -> Side:
        if hi.denominator == 1:
            j = int(hi)
            nxt = P[j + 1] if j < k else P[1]
            return _side(nxt.x, cx)
        return _side(P[int(hi) + 1].x, cx)

    comps = []
    if f.closed and merged and merged[0][0] == 0 and merged[-1][1] == k:
        if len(merged) == 1:
            # The whole closed path lies on the ray: nothing crosses it.
            comps.append(RayComponent(f.location(0), f.location(k), True, Side.L, Side.L))
            merged = []
        else:
            head = merged.pop(0)
            tail = merged.pop()
            comps.append(
                RayComponent(f.location(tail[0]), f.location(head[1]), True, before(tail[0]), after(head[1]))
            )
    for lo, hi in merged:
        comps.append(RayComponent(f.location(lo), f.location(hi), False, before(lo), after(hi)))

    simple = sum(1 for z in comps if z.classification is Classification.SIMPLE)
    if f.closed:
        word = tuple(z.side_after for z in comps)
    else:
        word = (_side(P[0].x, cx),) + tuple(z.side_after for z in comps)
    return RayDecomposition(c, f, tuple(comps), simple, simple % 2, word)


def parity(c: Point, f: PLPath) -> int:
    """The parity map: 1 when the upward ray from ``c`` has an odd number of
    simple components against ``f``."""
    return ray_decomposition(c, f).parity


def point_in_circuit(c: Point, f: PLPath) -> Location:
    if any(contains_point(s, c) for s in f.segments()):
        return Location.ON_CURVE
    return Location.INSIDE if parity(c, f) else Location.OUTSIDE
