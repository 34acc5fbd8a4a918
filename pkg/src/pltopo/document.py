"""Strict JSON geometry documents with exact rational coordinates.

Coordinates are strings: ``"3"``, ``"-7/4"``.  One document per file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .errors import ParseError, ValidationError
from .exact_geom import Point
from .parity import parity
from .pl_path import PLArc, PLCircuit, PLPath
from .planarity import Drawing, Edge, validate_drawing
from .witness import SeparationWitness

KINDS = ("point", "path", "arc", "circuit", "drawing", "witness")
_NUM = re.compile(r"^-?\d+(/\d+)?$")

_FIELDS = {
    "point": {"point"},
    "path": {"corners", "closed"},
    "arc": {"corners"},
    "circuit": {"corners"},
    "drawing": {"terminals", "edges"},
    "witness": {"circuit", "c", "d", "l", "p", "a", "b", "line_x", "parity_c", "parity_d", "line_shifted"},
}
_REQUIRED = {
    "point": {"point"},
    "path": {"corners"},
    "arc": {"corners"},
    "circuit": {"corners"},
    "drawing": {"terminals", "edges"},
    "witness": _FIELDS["witness"] - {"line_shifted"},
}


@dataclass(frozen=True)
class GeometryDocument:
    kind: str
    payload: Any
    name: Optional[str] = None


class _Parser:
    def __init__(self, text: str):
        self.text = text

    def where(self, needle: str):
        """1-based (line, column) of the first occurrence of ``needle``."""
        i = self.text.find(needle)
        if i < 0:
            return None, None
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def fail(self, message: str, needle: Optional[str] = None):
        line, col = self.where(needle) if needle else (None, None)
        raise ParseError(message, line, col)

    def rational(self, v) -> Fraction:
        if not isinstance(v, str) or not _NUM.match(v):
            self.fail(f"coordinate must be an integer or p/q string, got {v!r}", json.dumps(v))
        if v.endswith("/0") or re.search(r"/0+$", v):
            self.fail(f"zero denominator in {v!r}", json.dumps(v))
        return Fraction(v)

    def point(self, v) -> Point:
        if not isinstance(v, list) or len(v) != 2:
            self.fail(f"a point is a pair of coordinate strings, got {v!r}")
        return Point(self.rational(v[0]), self.rational(v[1]))

    def corners(self, v) -> tuple:
        if not isinstance(v, list):
            self.fail("corners must be a list")
        return tuple(self.point(c) for c in v)

    def obj(self, v, allowed, required, what):
        if not isinstance(v, dict):
            self.fail(f"{what} must be a JSON object")
        for key in v:
            if key not in allowed:
                self.fail(f"unknown field {key!r} in {what}", json.dumps(key))
        for key in sorted(required):
            if key not in v:
                self.fail(f"missing field {key!r} in {what}")
        return v

    def bit(self, v, what) -> int:
        if v not in (0, 1) or isinstance(v, bool):
            self.fail(f"{what} must be 0 or 1")
        return v


def _path_of(kind: str, corners, closed: bool, validate: bool) -> PLPath:
    try:
        if kind == "arc":
            return PLArc(corners) if validate else PLPath(corners)
        if kind == "circuit":
            return PLCircuit(corners) if validate else PLPath(corners, True)
        return PLPath(corners, closed)
    except ValidationError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_document(text: str, validate: bool = True) -> GeometryDocument:
    """Parse and (by default) validate one document.

    Raises ParseError for malformed input and ValidationError when the payload
    breaks its module's invariants.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    P = _Parser(text)
    if not isinstance(raw, dict):
        P.fail("document must be a JSON object")
    kind = raw.get("kind")
    if kind not in KINDS:
        P.fail(f"unknown kind {kind!r}", json.dumps(kind) if isinstance(kind, str) else None)
    P.obj(raw, _FIELDS[kind] | {"kind", "name"}, _REQUIRED[kind], "document")
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        P.fail("name must be a string")

    if kind == "point":
        payload = P.point(raw["point"])
    elif kind in ("path", "arc", "circuit"):
        closed = raw.get("closed", False)
        if not isinstance(closed, bool):
            P.fail("closed must be true or false")
        payload = _path_of(kind, P.corners(raw["corners"]), closed, validate)
    elif kind == "drawing":
        payload = _parse_drawing(P, raw, validate)
    else:
        payload = _parse_witness(P, raw, validate)
    return GeometryDocument(kind, payload, name)


def _parse_drawing(P: _Parser, raw, validate: bool) -> Drawing:
    terms = raw["terminals"]
    if not isinstance(terms, dict):
        P.fail("terminals must map names to points")
    terminals = tuple((n, P.point(v)) for n, v in terms.items())
    if not isinstance(raw["edges"], list):
        P.fail("edges must be a list")
    edges = []
    for e in raw["edges"]:
        P.obj(e, {"u", "v", "corners"}, {"u", "v", "corners"}, "edge")
        if not isinstance(e["u"], str) or not isinstance(e["v"], str):
            P.fail("edge ends must be terminal names")
        corners = P.corners(e["corners"])
        edges.append(Edge(e["u"], e["v"], _path_of("arc", corners, False, validate)))
    try:
        d = Drawing(terminals, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if validate:
        v = validate_drawing(d)
        if v is not None:
            raise ValidationError(f"drawing is not plane at ({v.point.x}, {v.point.y})", v)
    return d


def _parse_witness(P: _Parser, raw, validate: bool) -> SeparationWitness:
    circuit = _path_of("circuit", P.corners(raw["circuit"]), True, validate)
    pts = {k: P.point(raw[k]) for k in ("c", "d", "l", "p", "a", "b")}
    shifted = raw.get("line_shifted", False)
    if not isinstance(shifted, bool):
        P.fail("line_shifted must be true or false")
    w = SeparationWitness(
        circuit=circuit,
        line_x=P.rational(raw["line_x"]),
        parity_c=P.bit(raw["parity_c"], "parity_c"),
        parity_d=P.bit(raw["parity_d"], "parity_d"),
        line_shifted=shifted,
        **pts,
    )
    if validate:
        try:
            ok = (w.parity_c, w.parity_d) == (1, 0) and parity(w.c, circuit) == 1 and parity(w.d, circuit) == 0
        except ValueError:
            ok = False
        if not ok:
            raise ValidationError("witness points do not have parities 1 and 0")
    return w


def _q(x: Fraction) -> str:
    return str(x)


def _p(p: Point) -> list:
    return [_q(p.x), _q(p.y)]


def document_to_json(doc: GeometryDocument) -> dict:
    out: dict = {"kind": doc.kind}
    if doc.name is not None:
        out["name"] = doc.name
    x = doc.payload
    if doc.kind == "point":
        out["point"] = _p(x)
    elif doc.kind in ("path", "arc", "circuit"):
        out["corners"] = [_p(c) for c in x.corners]
        if doc.kind == "path":
            out["closed"] = x.closed
    elif doc.kind == "drawing":
        out["terminals"] = {n: _p(p) for n, p in x.terminals}
        out["edges"] = [{"u": e.u, "v": e.v, "corners": [_p(c) for c in e.arc.corners]} for e in x.edges]
    else:
        out["circuit"] = [_p(c) for c in x.circuit.corners]
        for k in ("c", "d", "l", "p", "a", "b"):
            out[k] = _p(getattr(x, k))
        out["line_x"] = _q(x.line_x)
        out["parity_c"] = x.parity_c
        out["parity_d"] = x.parity_d
        out["line_shifted"] = x.line_shifted
    return out


def dump_document(doc: GeometryDocument) -> str:
    """One top-level field per line, values compact."""
    body = document_to_json(doc)
    lines = [f" {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in body.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def load_document(path, validate: bool = True) -> GeometryDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), validate)
