"""Plane drawings of small graphs, their validation, and K3,3 refutations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .errors import CertificateFailure, InvalidDrawing, PreconditionError, WrongGraph
from .exact_geom import Point, Segment, param_of, seg_intersection
from .parity import parity
from .pl_path import PLCircuit, PLPath, concat, reverse


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    arc: PLPath

    @property
    def name(self) -> str:
        return f"{self.u}-{self.v}"


@dataclass(frozen=True)
class Drawing:
    """Named terminals plus one PL arc per edge, joining its two terminals."""

    terminals: tuple
    edges: tuple

    def __post_init__(self):
        terms = self.terminals
        if isinstance(terms, Mapping):
            terms = terms.items()
        terms = tuple((str(n), p if isinstance(p, Point) else Point(*p)) for n, p in terms)
        object.__setattr__(self, "terminals", terms)
        object.__setattr__(self, "edges", tuple(self.edges))
        names = [n for n, _ in terms]
        if len(set(names)) != len(names):
            raise PreconditionError("terminal names must be unique")
        if len({p for _, p in terms}) != len(terms):
            raise PreconditionError("terminal points must be distinct")
        pos = dict(terms)
        seen = set()
        for e in self.edges:
            if e.u not in pos or e.v not in pos:
                raise PreconditionError(f"edge {e.name} names an unknown terminal")
            if e.arc.closed or e.arc.ep() != frozenset((pos[e.u], pos[e.v])):
                raise PreconditionError(f"arc of edge {e.name} does not join its terminals")
            pair = frozenset((e.u, e.v))
            if pair in seen:
                raise PreconditionError(f"edge {e.name} is repeated")
            seen.add(pair)

    def point(self, name: str) -> Point:
        for n, p in self.terminals:
            if n == name:
                return p
        raise KeyError(name)

    def with_edge(self, edge: Edge) -> "Drawing":
        return Drawing(self.terminals, self.edges + (edge,))


@dataclass(frozen=True)
class DrawingViolation:
    edge1: str
    edge2: str
    point: Point


@dataclass(frozen=True)
class TerminalHit:
    edge: str
    terminal: str
    point: Point


def validate_drawing(d: Drawing) -> Optional[Union[DrawingViolation, TerminalHit]]:
    """``None`` when arc interiors are pairwise disjoint and avoid every terminal.

    Otherwise the first problem found in (edge index, parameter) order.
    Every arc is assumed injective already.
    """
    pos = dict(d.terminals)
    edges = d.edges
    ends = [frozenset((pos[e.u], pos[e.v])) for e in edges]
    for i, e in enumerate(edges):
        found = []
        for name, tp in d.terminals:
            if name in (e.u, e.v):
                continue
            loc = e.arc.locate(tp)
            if loc is not None:
                found.append((loc.t, TerminalHit(e.name, name, tp)))
        for si, s in enumerate(e.arc.segments()):
            for j, other in enumerate(edges):
                if j == i:
                    continue
                for t in other.arc.segments():
                    hit = seg_intersection(s, t)
                    if hit is None:
                        continue
                    if isinstance(hit, Segment):
                        cands = sorted((hit.a, hit.b), key=lambda p: param_of(s, p)) + [hit.midpoint()]
                    else:
                        cands = [hit]
                    for p in cands:
                        if p in ends[i] or p in ends[j]:
                            continue
                        found.append((si + param_of(s, p), DrawingViolation(e.name, other.name, p)))
                        break
        if found:
            return min(found, key=lambda item: item[0])[1]
    return None


@dataclass(frozen=True)
class RefutationCertificate:
    missing_edge: tuple
    separating_cycle: tuple
    cycle_circuit: PLCircuit
    parity_u: int
    parity_v: int


def bipartition(d: Drawing):
    """Two colour classes of the drawn graph, the first containing terminal 0."""
    names = [n for n, _ in d.terminals]
    adj = {n: set() for n in names}
    for e in d.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    colour = {names[0]: 0}
    queue = deque([names[0]])
    while queue:
        n = queue.popleft()
        for m in adj[n]:
            if m not in colour:
                colour[m] = 1 - colour[n]
                queue.append(m)
            elif colour[m] == colour[n]:
                raise WrongGraph("graph is not bipartite")
    if len(colour) != len(names):
        raise WrongGraph("graph is not connected")
    return [n for n in names if colour[n] == 0], [n for n in names if colour[n] == 1], adj


def _oriented(d: Drawing, a: str, b: str) -> PLPath:
    for e in d.edges:
        if {e.u, e.v} == {a, b}:
            arc = PLPath(e.arc.corners)
            return arc if arc.start == d.point(a) else reverse(arc)
    raise WrongGraph(f"no edge {a}-{b}")


def k33_certificate(d: Drawing) -> RefutationCertificate:
    """Parity certificate that K3,3 minus one edge cannot be completed.

    The four terminals other than the ends of the missing edge span a unique
    4-cycle; its circuit separates the two ends.
    """
    if len(d.terminals) != 6 or len(d.edges) != 8:
        raise WrongGraph("expected K3,3 minus one edge: 6 terminals, 8 edges")
    A, B, adj = bipartition(d)
    if len(A) != 3 or len(B) != 3:
        raise WrongGraph("parts must have three terminals each")
    missing = [(a, b) for a in A for b in B if b not in adj[a]]
    if len(missing) != 1:
        raise WrongGraph("exactly one cross edge must be missing")
    v = validate_drawing(d)
    if v is not None:
        raise InvalidDrawing(f"drawing is not plane: {v}", v)
    u, w = missing[0]
    x1, x2 = [a for a in A if a != u]
    y1, y2 = [b for b in B if b != w]
    order = [(x1, y1), (y1, x2), (x2, y2), (y2, x1)]
    path = _oriented(d, *order[0])
    for a, b in order[1:]:
        path = concat(path, _oriented(d, a, b))
    circuit = PLCircuit(path.corners)
    pu = parity(d.point(u), circuit)
    pw = parity(d.point(w), circuit)
    if pu == pw:
        raise CertificateFailure(f"{u} and {w} have equal parity {pu} against the 4-cycle")
    names = tuple(f"{a}-{b}" for a, b in order)
    return RefutationCertificate((u, w), names, circuit, pu, pw)
