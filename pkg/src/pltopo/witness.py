"""Separation witnesses for circuits and the box-and-chord gadget.

``separation_witness`` picks two points of different parity using the
leftmost/rightmost split of the circuit; ``replay_chain`` re-runs the
parity bookkeeping on a refined copy, one equality at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .complement import horizontal_chord, outer_detour
from .errors import (
    EndpointMismatch,
    MandatoryOffCurve,
    NotDisjoint,
    PointNotOnCircuit,
    PreconditionError,
)
from .exact_geom import (
    Direction,
    Point,
    Segment,
    VerticalRay,
    as_items,
    as_rational,
    common_point,
    dist2,
    item_dist2,
    sq_dist,
    sqrt_lower,
)
from .parity import parity
from .pl_path import (
    PathLocation,
    PLArc,
    PLPath,
    _insert_corner,
    extreme_points,
    first_hit,
    split_circuit,
    split_path_at,
)
from .planarity import Drawing, Edge


@dataclass(frozen=True)
class BarrierChain:
    """A connected union of items: each item touches the next one."""

    parts: tuple

    def __post_init__(self):
        parts = as_items(self.parts)
        object.__setattr__(self, "parts", parts)
        for x, y in zip(parts, parts[1:]):
            if item_dist2(x, y) != 0:
                raise PreconditionError(f"barrier items {x} and {y} do not touch")


def clearance_budget(g: Optional[PLPath], f_pieces: Sequence[PLPath], barriers: Sequence[BarrierChain]) -> Fraction:
    """Squared minimum distance over the required disjoint pairs.

    ``g`` is paired with ``f_pieces[0]`` and ``barriers[i]`` with
    ``f_pieces[i + 1]``; ``g`` may be None.  Raises NotDisjoint with a contact
    point if some pair touches.
    """
    if len(barriers) != len(f_pieces) - 1:
        raise PreconditionError("need one barrier per f piece after the first")
    pairs = []
    if g is not None:
        pairs.append((as_items(g), as_items(f_pieces[0])))
    for bar, piece in zip(barriers, f_pieces[1:]):
        pairs.append((bar.parts, as_items(piece)))
    if not pairs:
        raise PreconditionError("no pairs to measure")
    best = None
    for xs, ys in pairs:
        for x in xs:
            for y in ys:
                d = item_dist2(x, y)
                if d == 0:
                    raise NotDisjoint(f"{x} touches {y}", common_point(x, y))
                if best is None or d < best:
                    best = d
    return best


def refine_closed(samples: PLPath, h2, mandatory: Sequence[Point] = ()) -> PLPath:
    """Closed PL path through all corners and mandatory points, pieces shorter
    than sqrt(h2), obtained by repeated exact midpoint subdivision."""
    h2 = as_rational(h2)
    if h2 <= 0:
        raise PreconditionError("h2 must be positive")
    if not samples.closed:
        raise PreconditionError("refine_closed expects a closed path")
    cyc = list(samples.corners[:-1])
    for m in mandatory:
        try:
            _insert_corner(cyc, m)
        except PointNotOnCircuit as exc:
            raise MandatoryOffCurve(str(exc)) from None
    out = []
    n = len(cyc)
    for i in range(n):
        a, b = cyc[i], cyc[(i + 1) % n]
        length2 = sq_dist(a, b)
        m = 1
        while length2 >= h2 * m * m:
            m *= 2
        for j in range(m):
            out.append(Point(a.x + (b.x - a.x) * j / m, a.y + (b.y - a.y) * j / m))
    out.append(out[0])
    return PLPath(tuple(out), True)


@dataclass(frozen=True)
class SeparationWitness:
    circuit: PLPath
    c: Point
    d: Point
    l: Point
    p: Point
    a: Point
    b: Point
    line_x: Fraction
    parity_c: int
    parity_d: int
    line_shifted: bool = False


def _vertical_hits(f: PLPath, x: Fraction):
    """(ylo, yhi) spans where the line at ``x`` meets each piece."""
    spans = []
    for s in f.segments():
        if s.xmin > x or s.xmax < x:
            continue
        if s.a.x == s.b.x:
            spans.append((s.ymin, s.ymax))
        else:
            y = s.a.y + (x - s.a.x) * (s.b.y - s.a.y) / (s.b.x - s.a.x)
            spans.append((y, y))
    return spans


def _has_vertical_piece(f: PLPath, x: Fraction) -> bool:
    return any(s.a.x == s.b.x == x for s in f.segments())


def _split_at_extremes(f: PLPath, line_x: Fraction):
    """(l, p, a, f1, f2): f1 is the l-p arc carrying the top point ``a`` of the line."""
    ext = extreme_points(f)
    l, p = ext.leftmost, ext.rightmost
    arc1, arc2 = split_circuit(f, l, p)
    a_y = max(hi for _, hi in _vertical_hits(f, line_x))
    a = Point(line_x, a_y)
    f1, f2 = (arc1, arc2) if arc1.on_carrier(a) else (arc2, arc1)
    return l, p, a, f1, f2


def separation_witness(f: PLPath) -> SeparationWitness:
    """Points ``c`` (parity 1) and ``d`` (parity 0) separated by the circuit.

    The vertical line runs through the midpoint of the leftmost and rightmost
    points, moved a quarter of their gap to the right when the midpoint line
    carries a vertical piece.  ``c`` drops below ``b`` by at most half of
    min(1, clearance of b from the other arc); ``d`` sits one unit left of
    the curve at the height of ``c``.
    """
    if not f.closed:
        raise PreconditionError("separation_witness expects a circuit")
    ext = extreme_points(f)
    l, p = ext.leftmost, ext.rightmost
    line_x = (l.x + p.x) / 2
    shifted = False
    if _has_vertical_piece(f, line_x):
        alt = line_x + (p.x - l.x) / 4
        if not _has_vertical_piece(f, alt):
            line_x, shifted = alt, True
    l, p, a, f1, f2 = _split_at_extremes(f, line_x)
    b_y = min(lo for lo, _ in _vertical_hits(f1, line_x))
    b = Point(line_x, b_y)
    drop = sqrt_lower(min(Fraction(1), dist2(b, f2)) / 4)
    c = Point(line_x, b.y - drop)
    d = Point(l.x - 1, c.y)
    return SeparationWitness(f, c, d, l, p, a, b, line_x, parity(c, f), parity(d, f), shifted)


def verify_witness(w: SeparationWitness, g: PLPath) -> Optional[PathLocation]:
    """Where ``g`` (joining c to d) first meets the circuit; None means the
    witness is broken."""
    if g.start != w.c or g.end != w.d:
        raise EndpointMismatch("path must run from the witness point c to d")
    return first_hit(g, w.circuit)


@dataclass(frozen=True)
class ChainReplay:
    """Parities along the separation argument on the refined closed map f4.

    f5 is the part of f4 over the arc carrying a and b, f6 the rest.
    """

    h2: Fraction
    refined: PLPath
    n_d_f4: int
    n_c_f4: int
    n_c_f5: int
    n_c_f6: int
    n_a_f6: int

    @property
    def additive(self) -> bool:
        return self.n_c_f4 == self.n_c_f5 ^ self.n_c_f6


def replay_chain(w: SeparationWitness) -> ChainReplay:
    f = w.circuit
    l, p, a, f1, f2 = _split_at_extremes(f, w.line_x)
    b, c = w.b, w.c
    parts = [Segment(c, b)] if c != b else []
    if a != b:
        sub = _subarc(f1, b, a)
        parts.extend(sub.segments())
    parts.append(VerticalRay(a, Direction.UP))
    kappa = BarrierChain((VerticalRay(c, Direction.DOWN),))
    lam = BarrierChain(tuple(parts))
    h2 = clearance_budget(None, [f, f1, f2], [kappa, lam])
    f4 = refine_closed(f, h2, [a, b, l, p])
    arc1, arc2 = split_circuit(f4, l, p)
    f5, f6 = (arc1, arc2) if arc1.on_carrier(a) else (arc2, arc1)
    return ChainReplay(
        h2=h2,
        refined=f4,
        n_d_f4=parity(w.d, f4),
        n_c_f4=parity(c, f4),
        n_c_f5=parity(c, f5),
        n_c_f6=parity(c, f6),
        n_a_f6=parity(a, f6),
    )


def _subarc(f: PLPath, u: Point, v: Point) -> PLPath:
    """The piece of an arc between two of its points, oriented from u to v."""
    lu, lv = f.locate(u), f.locate(v)
    if lu is None or lv is None:
        raise PointNotOnCircuit("subarc ends must lie on the arc")
    lo, hi = (lu, lv) if lu.t <= lv.t else (lv, lu)
    corners = [lo.point] + [f.corners[i] for i in range(f.k + 1) if lo.t < i < hi.t] + [hi.point]
    path = PLPath(tuple(corners))
    return path if lu.t <= lv.t else PLPath(tuple(reversed(corners)))


@dataclass(frozen=True)
class Claim4Gadget:
    """Top/bottom split, box detour and chord of a circuit.

    ``c`` and ``d`` are the chord's ends on ``f0`` and ``f1``; ``e`` is the
    chord midpoint and ``g`` a point on the detour.  Their parities differ,
    so no arc joins them off the curve.
    """

    a: Point
    b: Point
    c: Point
    d: Point
    e: Point
    g: Point
    f0: PLArc
    f1: PLArc
    f2: PLArc
    chord: Segment
    parity_e: int
    parity_g: int


def claim4_probe(f: PLPath) -> Claim4Gadget:
    if not f.closed:
        raise PreconditionError("claim4_probe expects a circuit")
    ext = extreme_points(f)
    a, b = ext.top, ext.bottom
    f0, f1 = split_circuit(f, a, b)
    f2 = outer_detour(f, a, b)
    chord = horizontal_chord(f, f0, f1, (a.y + b.y) / 2)
    c, d = (chord.a, chord.b) if f0.on_carrier(chord.a) else (chord.b, chord.a)
    e = chord.midpoint()
    g = f2.segment(3).midpoint()
    return Claim4Gadget(a, b, c, d, e, g, f0, f1, f2, chord, parity(e, f), parity(g, f))


def claim4_drawing(gadget: Claim4Gadget) -> Drawing:
    """The eight realisable arcs between U = {a, b, e} and V = {c, d, g}."""
    G = gadget
    ac, cb = split_path_at(G.f0, G.c)
    bd, da = split_path_at(G.f1, G.d)
    ag, gb = split_path_at(G.f2, G.g)
    terminals = (("a", G.a), ("b", G.b), ("e", G.e), ("c", G.c), ("d", G.d), ("g", G.g))
    edges = (
        Edge("a", "c", ac),
        Edge("a", "d", da),
        Edge("a", "g", ag),
        Edge("b", "c", cb),
        Edge("b", "d", bd),
        Edge("b", "g", gb),
        Edge("e", "c", PLPath((G.e, G.c))),
        Edge("e", "d", PLPath((G.e, G.d))),
    )
    return Drawing(terminals, edges)
