"""Constructive pieces of the complement of a PL circuit.

Side probes, bisector offset cycles, grid routing, horizontal chords, the
outer box detour, and a flood-fill labelling used as an independent oracle
for the parity map.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import ndimage

from .errors import (
    CornerProbe,
    DegeneratePiece,
    NoChord,
    PreconditionError,
    ProbeCrossesCurve,
    DeltaExhausted,
    RoutingFailed,
)
from .exact_geom import (
    Point,
    Segment,
    as_rational,
    bbox,
    dist2,
    item_dist2,
    orient,
    seg_intersection,
    sqrt_lower,
)
from .parity import parity
from .pl_path import PathLocation, PLArc, PLPath, extreme_points, validate_arc


class SideLabel(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def side_probe(f: PLPath, loc: PathLocation, c: Point) -> SideLabel:
    """Which side of the oriented circuit the probe segment ``loc -> c`` leaves from."""
    if loc.parameter == 0 or loc.parameter == 1:
        raise CornerProbe("probe must start in the interior of a piece")
    if c == loc.point:
        raise ProbeCrossesCurve("probe has zero length")
    probe = Segment(loc.point, c)
    for s in f.segments():
        hit = seg_intersection(probe, s)
        if hit is not None and hit != loc.point:
            raise ProbeCrossesCurve(f"probe meets the curve again at {hit}")
    s = f.segment(loc.segment_index)
    return SideLabel.LEFT if orient(s.a, s.b, c) > 0 else SideLabel.RIGHT


# -- feature size and grid pitch ---------------------------------------------

def min_feature2(f: PLPath) -> Fraction:
    """Squared minimum feature size of a circuit.

    The smallest of: piece lengths, distances between non-adjacent pieces,
    and distances from each corner to the pieces not incident to it.
    """
    segs = f.segments()
    k = len(segs)
    best = min((s.b.x - s.a.x) ** 2 + (s.b.y - s.a.y) ** 2 for s in segs)
    corners = f.corners[:-1] if f.closed else f.corners
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = j == i + 1 or (f.closed and i == 0 and j == k - 1)
            if not adjacent:
                best = min(best, item_dist2(segs[i], segs[j]))
    for ci, c in enumerate(corners):
        for j, s in enumerate(segs):
            if c == s.a or c == s.b:
                continue
            best = min(best, item_dist2(c, s))
    return best


def pitch_below(bound: Fraction) -> Fraction:
    """Largest power of two strictly below ``bound``."""
    if bound <= 0:
        raise PreconditionError("pitch bound must be positive")
    p = Fraction(1)
    while p >= bound:
        p /= 2
    while 2 * p < bound:
        p *= 2
    return p


def default_pitch(f: PLPath) -> Fraction:
    """A grid pitch below one eighth of the minimum feature size."""
    return pitch_below(sqrt_lower(min_feature2(f)) / 8)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _blocked_cells(segments, x0: Fraction, y0: Fraction, pitch: Fraction, nx: int, ny: int) -> np.ndarray:
    """Boolean grid, True where the closed cell meets some segment. Exact."""
    blocked = np.zeros((ny, nx), dtype=bool)
    coords = []
    for s in segments:
        coords.append(((s.a.x - x0) / pitch, (s.a.y - y0) / pitch, (s.b.x - x0) / pitch, (s.b.y - y0) / pitch))
    Q = 1
    for c in coords:
        for v in c:
            Q = math.lcm(Q, v.denominator)
    for c in coords:
        x1, y1, x2, y2 = (int(v * Q) for v in c)
        if x1 > x2:
            x1, y1, x2, y2 = x2, y2, x1, y1
        if x1 == x2:
            c0, c1 = max(0, _ceil_div(x1, Q) - 1), min(nx - 1, x1 // Q)
            lo, hi = min(y1, y2), max(y1, y2)
            r0, r1 = max(0, _ceil_div(lo, Q) - 1), min(ny - 1, hi // Q)
            blocked[r0:r1 + 1, c0:c1 + 1] = True
            continue
        dx = x2 - x1
        dy = y2 - y1
        for col in range(max(0, _ceil_div(x1, Q) - 1), min(nx - 1, x2 // Q) + 1):
            xa = max(x1, col * Q)
            xb = min(x2, (col + 1) * Q)
            if xa > xb:
                continue
            # y(x) = (y1*dx + (x - x1)*dy) / dx, compared against row lines r*Q.
            na = y1 * dx + (xa - x1) * dy
            nb = y1 * dx + (xb - x1) * dy
            lo, hi = min(na, nb), max(na, nb)
            den = dx * Q
            r0 = max(0, _ceil_div(lo, den) - 1)
            r1 = min(ny - 1, hi // den)
            if r0 <= r1:
                blocked[r0:r1 + 1, col] = True
    return blocked


@dataclass(frozen=True)
class _Grid:
    x0: Fraction
    y0: Fraction
    pitch: Fraction
    nx: int
    ny: int

    def cell_of(self, p: Point):
        col = math.floor((p.x - self.x0) / self.pitch)
        row = math.floor((p.y - self.y0) / self.pitch)
        return row, col

    def center(self, row: int, col: int) -> Point:
        return Point(self.x0 + (col + Fraction(1, 2)) * self.pitch, self.y0 + (row + Fraction(1, 2)) * self.pitch)


def _grid_over(points, pitch: Fraction) -> _Grid:
    xmin, ymin, xmax, ymax = bbox(points)
    nx = math.ceil((xmax - xmin) / pitch) + 4
    ny = math.ceil((ymax - ymin) / pitch) + 4
    return _Grid(xmin - 2 * pitch, ymin - 2 * pitch, pitch, nx, ny)


@dataclass(frozen=True, eq=False)
class GridLabeling:
    """Flood-fill labelling of the free cells around a circuit.

    ``labels[row, col]`` is 0 for cells whose closed square meets the curve
    and a positive component id otherwise.  Pitch-dependent: at a coarse
    pitch narrow regions disappear.
    """

    pitch: Fraction
    origin: Point
    labels: np.ndarray
    component_count: int
    outside_label: int

    @property
    def bounds(self):
        ny, nx = self.labels.shape
        return (self.origin.x, self.origin.y, self.origin.x + nx * self.pitch, self.origin.y + ny * self.pitch)

    def label_at(self, p: Point) -> int:
        """Label of a free closed cell containing ``p``; 0 if none is free.

        Points beyond the grid get the outside label: the grid border is free
        and the curve lies well inside it.
        """
        ny, nx = self.labels.shape
        x0, y0, x1, y1 = self.bounds
        if not (x0 <= p.x <= x1 and y0 <= p.y <= y1):
            return self.outside_label
        gx = (p.x - self.origin.x) / self.pitch
        gy = (p.y - self.origin.y) / self.pitch
        cols = {math.floor(gx)} | ({int(gx) - 1} if gx.denominator == 1 else set())
        rows = {math.floor(gy)} | ({int(gy) - 1} if gy.denominator == 1 else set())
        for r in sorted(rows):
            for c in sorted(cols):
                if 0 <= r < ny and 0 <= c < nx and self.labels[r, c]:
                    return int(self.labels[r, c])
        return 0

    def is_inside_label(self, label: int) -> bool:
        return label != 0 and label != self.outside_label


_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])


def grid_components(f: PLPath, pitch, merge_levels: int = 3) -> GridLabeling:
    """Label the 4-connected components of free cells on a uniform grid.

    The grid covers the bounding box inflated by two cells on each side, so
    the whole border belongs to the unbounded component.

    Near an acute corner a free cell can be boxed in by blocked neighbours
    at any pitch.  While more than two components remain, the same region is
    relabelled at pitch / 2^L (L = 1 .. merge_levels) and coarse components
    falling into one fine component are merged.  Merging is sound: a coarse
    free cell is a union of free fine cells.
    """
    pitch = as_rational(pitch)
    if pitch <= 0:
        raise PreconditionError("pitch must be positive")
    g = _grid_over(f.corners, pitch)
    segs = f.segments()
    blocked = _blocked_cells(segs, g.x0, g.y0, pitch, g.nx, g.ny)
    labels, count = ndimage.label(~blocked, structure=_FOUR)
    for level in range(1, merge_levels + 1):
        if count <= 2:
            break
        m = 1 << level
        fine_blocked = _blocked_cells(segs, g.x0, g.y0, pitch / m, g.nx * m, g.ny * m)
        fine, _ = ndimage.label(~fine_blocked, structure=_FOUR)
        rep = fine[::m, ::m]
        free = labels > 0
        # every coarse component must sit inside a single fine component
        pairs = np.unique(np.stack([labels[free], rep[free]]), axis=1)
        assert len(np.unique(pairs[0])) == pairs.shape[1]
        merged = np.zeros_like(labels)
        ids, inverse = np.unique(rep[free], return_inverse=True)
        merged[free] = inverse.reshape(-1) + 1
        labels, count = merged, len(ids)
    outside = int(labels[0, 0])
    border = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    assert (border == outside).all(), "grid border must be free and connected"
    return GridLabeling(pitch, Point(g.x0, g.y0), labels, int(count), outside)


# -- bisector offsets ----------------------------------------------------------

@dataclass(frozen=True)
class OffsetCertificate:
    disjoint_from_circuit: bool
    uniform_parity: int
    side: SideLabel


@dataclass(frozen=True)
class OffsetCycle:
    requested_delta: Fraction
    delta: Fraction
    cycle: PLPath
    certificate: OffsetCertificate


def _offset_corners(corners, delta: Fraction, sign: int):
    """Corners pushed ``delta`` along their angle bisectors.

    The bisector direction is irrational in general; it is evaluated in
    floating point and snapped to a dyadic grid far finer than ``delta``.
    Correctness comes from the exact certificate, not from this step.
    """
    k = len(corners)
    fd = float(delta)
    scale = 1 << (max(0, -math.floor(math.log2(fd))) + 24)
    out = []
    for i in range(k):
        p, c, n = corners[i - 1], corners[i], corners[(i + 1) % k]
        ux, uy = float(c.x - p.x), float(c.y - p.y)
        vx, vy = float(n.x - c.x), float(n.y - c.y)
        lu, lv = math.hypot(ux, uy), math.hypot(vx, vy)
        # Sum of the two left normals points along the bisector, to the left.
        bx = -uy / lu - vy / lv
        by = ux / lu + vx / lv
        lb = math.hypot(bx, by)
        if lb < 1e-12:
            return None
        ox = sign * fd * bx / lb
        oy = sign * fd * by / lb
        out.append(Point(c.x + Fraction(round(ox * scale), scale), c.y + Fraction(round(oy * scale), scale)))
    return out


def _certify(f: PLPath, cyc_corners, side: SideLabel) -> Optional[tuple]:
    try:
        cycle = PLPath(tuple(cyc_corners) + (cyc_corners[0],), True)
    except DegeneratePiece:
        return None
    fsegs = f.segments()
    # each offset piece must run the same way as its source piece; a large
    # delta can fold the cycle over and reverse pieces
    for s, t in zip(fsegs, cycle.segments()):
        if (s.b.x - s.a.x) * (t.b.x - t.a.x) + (s.b.y - s.a.y) * (t.b.y - t.a.y) <= 0:
            return None
    for s in cycle.segments():
        for t in fsegs:
            if seg_intersection(s, t) is not None:
                return None
    # One clean probe from the curve to the cycle fixes the component.
    probed = None
    for i, (s, t) in enumerate(zip(fsegs, cycle.segments()), 1):
        loc = PathLocation(i, Fraction(1, 2), s.midpoint())
        try:
            probed = side_probe(f, loc, t.midpoint())
        except ProbeCrossesCurve:
            continue
        break
    if probed is not side:
        return None
    samples = list(cycle.corners[:-1]) + [s.midpoint() for s in cycle.segments()]
    bits = {parity(q, f) for q in samples}
    if len(bits) != 1:
        return None
    return cycle, bits.pop()


def bisector_offset(f: PLPath, delta, side: SideLabel, max_halvings: int = 32) -> OffsetCycle:
    """Offset cycle on one side of a circuit, certified exactly.

    On a failed certificate delta is halved, at most ``max_halvings`` times.
    """
    requested = as_rational(delta)
    if requested <= 0:
        raise PreconditionError("delta must be positive")
    if not f.closed:
        raise PreconditionError("bisector_offset expects a circuit")
    sign = 1 if side is SideLabel.LEFT else -1
    corners = f.corners[:-1]
    d = requested
    for _ in range(max_halvings + 1):
        cyc = _offset_corners(corners, d, sign)
        if cyc is not None:
            got = _certify(f, cyc, side)
            if got is not None:
                cycle, bit = got
                return OffsetCycle(requested, d, cycle, OffsetCertificate(True, bit, side))
        d /= 2
    raise DeltaExhausted(f"no certified offset after {max_halvings} halvings of {requested}")


# -- routing -------------------------------------------------------------------

@dataclass(frozen=True)
class Separated:
    """Result of routing between points of different parity."""

    parity_u: int
    parity_v: int


def _dedupe(corners):
    out = []
    for c in corners:
        if not out or out[-1] != c:
            out.append(c)
    return out


def loop_erase(corners):
    """Shortcut self-intersections until the polyline is injective.

    The result's carrier is a subset of the input's.
    """
    cs = _dedupe(corners)
    while len(cs) >= 2:
        v = validate_arc(PLPath(tuple(cs)))
        if v is None:
            break
        i, j = sorted((v.loc1, v.loc2), key=lambda l: l.t)
        # keep corners up to the start of piece i, jump through the hit point,
        # resume after piece j.
        a = i.segment_index
        b = j.segment_index
        cs = _dedupe(cs[:a] + [v.point] + cs[b:])
    return cs


def simplify_collinear(corners):
    """Drop corners lying strictly between their neighbours on a line."""
    out = []
    for c in corners:
        while len(out) >= 2 and orient(out[-2], out[-1], c) == 0 and _between(out[-2], out[-1], c):
            out.pop()
        out.append(c)
    return out


def _between(a: Point, b: Point, c: Point) -> bool:
    return min(a.x, c.x) <= b.x <= max(a.x, c.x) and min(a.y, c.y) <= b.y <= max(a.y, c.y)


def _bfs(free: np.ndarray, start, goal):
    ny, nx = free.shape
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            path = []
            while cur is not None:
                path.append(cur)
                cur = prev[cur]
            return path[::-1]
        r, c = cur
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if 0 <= nb[0] < ny and 0 <= nb[1] < nx and free[nb] and nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    return None


def route_in_complement(f: PLPath, u: Point, v: Point, max_refinements: int = 3, max_cells: int = 4_000_000):
    """A PL arc from ``u`` to ``v`` avoiding the circuit, or :class:`Separated`.

    Breadth-first search over free grid cells whose pitch is at most a
    quarter of the clearance of u and v, then loop erasure and collinear
    simplification.
    """
    if u == v:
        raise PreconditionError("route endpoints must differ")
    pu, pv = parity(u, f), parity(v, f)
    if pu != pv:
        return Separated(pu, pv)
    clear2 = min(dist2(u, f), dist2(v, f))
    bound = min(sqrt_lower(clear2) / 4, sqrt_lower(min_feature2(f)) / 8)
    pitch = pitch_below(bound) if bound > 0 else None
    if pitch is None:
        raise PreconditionError("route endpoints must be off the curve")
    for _ in range(max_refinements + 1):
        g = _grid_over(list(f.corners) + [u, v], pitch)
        if g.nx * g.ny > max_cells:
            break
        blocked = _blocked_cells(f.segments(), g.x0, g.y0, pitch, g.nx, g.ny)
        cells = _bfs(~blocked, g.cell_of(u), g.cell_of(v))
        if cells is not None:
            corners = [u] + [g.center(r, c) for r, c in cells] + [v]
            corners = simplify_collinear(loop_erase(corners))
            corners = loop_erase(corners)
            arc = PLArc(tuple(corners))
            assert dist2(arc, f) > 0
            return arc
        pitch /= 2
    raise RoutingFailed("no grid route found although parities agree")


# -- horizontal chord and box detour ------------------------------------------

def _line_blocks(segments, y: Fraction):
    """Maximal x-intervals where the horizontal line at ``y`` meets the segments."""
    spans = []
    for s in segments:
        if s.ymin > y or s.ymax < y:
            continue
        if s.a.y == s.b.y:
            spans.append((s.xmin, s.xmax))
        else:
            x = s.a.x + (y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y)
            spans.append((x, x))
    spans.sort()
    blocks = []
    for lo, hi in spans:
        if blocks and lo <= blocks[-1][1]:
            blocks[-1][1] = max(blocks[-1][1], hi)
        else:
            blocks.append([lo, hi])
    return blocks


def horizontal_chord(f: PLPath, f0: PLPath, f1: PLPath, y) -> Segment:
    """A horizontal segment at height ``y`` from the interior of one arc to the
    interior of the other, its open interior missing the circuit.

    Scans consecutive blocks of line-carrier intersection and takes the first
    gap whose two sides belong to different arcs.
    """
    y = as_rational(y)
    ends = f0.ep() | f1.ep()

    def owner(p: Point):
        if p in ends:
            return None
        if f0.on_carrier(p):
            return 0
        if f1.on_carrier(p):
            return 1
        return None

    if not any(_line_blocks([s], y) for s in f0.segments()) or not any(_line_blocks([s], y) for s in f1.segments()):
        raise NoChord(f"line y={y} misses one of the arcs")
    blocks = _line_blocks(f.segments(), y)
    for (lo0, hi0), (lo1, hi1) in zip(blocks, blocks[1:]):
        left, right = Point(hi0, y), Point(lo1, y)
        a, b = owner(left), owner(right)
        if a is not None and b is not None and a != b:
            return Segment(left, right)
    raise NoChord(f"no chord at y={y} joins the two arc interiors")


def outer_detour(f: PLPath, a: Point, b: Point) -> PLArc:
    """Five-piece box detour from the top point ``a`` round to the bottom point ``b``.

    Up from a, right beyond the bounding box, down below it, left to below b,
    and up to b; margins are one unit.
    """
    ext = extreme_points(f)
    if a != ext.top or b != ext.bottom:
        raise PreconditionError("outer_detour needs the top and bottom extreme points")
    xmin, ymin, xmax, ymax = bbox(f.corners)
    arc = PLArc((
        a,
        Point(a.x, ymax + 1),
        Point(xmax + 1, ymax + 1),
        Point(xmax + 1, ymin - 1),
        Point(b.x, ymin - 1),
        b,
    ))
    for s in arc.segments():
        for t in f.segments():
            hit = seg_intersection(s, t)
            if hit is not None and hit != a and hit != b:
                raise PreconditionError(f"detour touches the curve at {hit}")
    return arc
