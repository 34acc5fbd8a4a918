"""Byte-stable SVG figures.  Decimals here are for display only."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from .complement import OffsetCycle
from .exact_geom import Point, Segment, bbox
from .parity import RayDecomposition
from .pl_path import PLPath
from .planarity import Drawing
from .witness import Claim4Gadget, SeparationWitness

_STYLE = (
    ".curve{fill:none;stroke:#000}"
    ".edge{fill:none;stroke:#246}"
    ".offset{fill:none;stroke:#080}"
    ".detour{fill:none;stroke:#888}"
    ".ray{fill:none;stroke:#c00}"
    ".chord{fill:none;stroke:#c60}"
    ".component{fill:#c00}"
    ".witness{fill:#00c}"
    ".terminal{fill:#000}"
)

# dash and gap lengths in stroke units
_DASH = {"offset": (4, 4), "ray": (8, 4)}


def fmt(q) -> str:
    """Reduced decimal; exact when the denominator is 2^a 5^b."""
    q = Fraction(q)
    den = q.denominator
    a = b = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    while den % 5 == 0:
        den //= 5
        b += 1
    if den == 1:
        n = max(a, b)
        scaled = q.numerator * 10**n // q.denominator
        sign = "-" if scaled < 0 else ""
        digits = str(abs(scaled)).rjust(n + 1, "0")
        whole, frac = digits[: len(digits) - n], digits[len(digits) - n:].rstrip("0")
        return sign + whole + ("." + frac if frac else "")
    with localcontext() as ctx:
        ctx.prec = 12
        d = Decimal(q.numerator) / Decimal(q.denominator)
    s = format(d.normalize(), "f")
    return s


class _Canvas:
    def __init__(self, points):
        xmin, ymin, xmax, ymax = bbox(points)
        w, h = xmax - xmin, ymax - ymin
        mx = (w if w else 1) / 20
        my = (h if h else 1) / 20
        self.xmin, self.xmax = xmin - mx, xmax + mx
        self.ymin, self.ymax = ymin - my, ymax + my
        # stroke unit: 1/256 of the larger side, a power of two for short decimals
        side = max(self.xmax - self.xmin, self.ymax - self.ymin)
        unit = Fraction(1)
        while unit > side / 256:
            unit /= 2
        while unit * 2 <= side / 256:
            unit *= 2
        self.unit = unit
        self.items = []

    def xy(self, p: Point) -> str:
        return f"{fmt(p.x)},{fmt(-p.y)}"

    def polyline(self, pts, cls: str):
        dash = _DASH.get(cls)
        extra = f' stroke-dasharray="{fmt(self.unit * dash[0])} {fmt(self.unit * dash[1])}"' if dash else ""
        self.items.append(f'<polyline class="{cls}" points="{" ".join(self.xy(p) for p in pts)}"{extra}/>')

    def dot(self, p: Point, cls: str):
        self.items.append(f'<circle class="{cls}" cx="{fmt(p.x)}" cy="{fmt(-p.y)}" r="{fmt(self.unit * 3)}"/>')

    def render(self) -> str:
        w, h = self.xmax - self.xmin, self.ymax - self.ymin
        box = f"{fmt(self.xmin)} {fmt(-self.ymax)} {fmt(w)} {fmt(h)}"
        head = f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{box}">'
        lines = [head, f"<style>{_STYLE}</style>", f'<g stroke-width="{fmt(self.unit)}">']
        lines += self.items + ["</g>", "</svg>"]
        return "\n".join(lines) + "\n"


def _points_of(obj) -> list:
    if isinstance(obj, Point):
        return [obj]
    if isinstance(obj, PLPath):
        return list(obj.corners)
    if isinstance(obj, Drawing):
        return [p for _, p in obj.terminals] + [c for e in obj.edges for c in e.arc.corners]
    if isinstance(obj, SeparationWitness):
        return list(obj.circuit.corners) + [obj.c, obj.d]
    if isinstance(obj, RayDecomposition):
        return list(obj.path.corners) + [obj.query]
    if isinstance(obj, Claim4Gadget):
        return list(obj.f0.corners) + list(obj.f1.corners) + list(obj.f2.corners)
    if isinstance(obj, OffsetCycle):
        return list(obj.cycle.corners)
    raise TypeError(f"cannot draw {type(obj).__name__}")


def emit_svg(obj, circuit: PLPath = None) -> str:
    """SVG text for a point, path, drawing, witness, ray decomposition,
    box-and-chord gadget or offset cycle (``circuit`` adds the base curve)."""
    if hasattr(obj, "kind") and hasattr(obj, "payload"):
        obj = obj.payload
    pts = _points_of(obj)
    if circuit is not None:
        pts += list(circuit.corners)
        cv = _Canvas(pts)
        cv.polyline(circuit.corners, "curve")
    else:
        cv = _Canvas(pts)

    if isinstance(obj, Point):
        cv.dot(obj, "witness")
    elif isinstance(obj, PLPath):
        cv.polyline(obj.corners, "curve")
    elif isinstance(obj, Drawing):
        for e in obj.edges:
            cv.polyline(e.arc.corners, "edge")
        for _, p in obj.terminals:
            cv.dot(p, "terminal")
    elif isinstance(obj, SeparationWitness):
        cv.polyline(obj.circuit.corners, "curve")
        cv.polyline([Point(obj.line_x, cv.ymin), Point(obj.line_x, cv.ymax)], "ray")
        cv.dot(obj.c, "witness")
        cv.dot(obj.d, "witness")
    elif isinstance(obj, RayDecomposition):
        cv.polyline(obj.path.corners, "curve")
        cv.polyline([obj.query, Point(obj.query.x, cv.ymax)], "ray")
        for z in obj.components:
            cv.dot(z.start.point, "component")
            if z.end.point != z.start.point:
                cv.dot(z.end.point, "component")
    elif isinstance(obj, Claim4Gadget):
        cv.polyline(obj.f0.corners, "curve")
        cv.polyline(obj.f1.corners, "curve")
        cv.polyline(obj.f2.corners, "detour")
        seg: Segment = obj.chord
        cv.polyline([seg.a, seg.b], "chord")
        cv.dot(obj.e, "witness")
        cv.dot(obj.g, "witness")
    elif isinstance(obj, OffsetCycle):
        cv.polyline(obj.cycle.corners, "offset")
    return cv.render()
