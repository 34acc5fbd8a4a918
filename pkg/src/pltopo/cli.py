"""``pltopo`` command line.

Exit status: 0 for a successful or positive result, 1 for a correctly
computed negative result (violation, separated ...), 2 for usage, parse
and precondition errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import complement, pl_path, planarity, witness
from .parity import point_in_circuit, ray_decomposition
from .document import GeometryDocument, dump_document, parse_document
from .errors import (
    CertificateFailure,
    DeltaExhausted,
    GeometryError,
    InvalidDrawing,
    ParseError,
    ValidationError,
)
from .exact_geom import Point, as_rational
from .svg import emit_svg

OK, NEGATIVE, USAGE = 0, 1, 2

# let "-3/2" through as a value rather than an option
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class _Usage(Exception):
    pass


def _rat(s: str):
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def _pt(p: Point) -> str:
    return f"({p.x}, {p.y})"


def _load(path: str, validate: bool = True) -> GeometryDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, validate)


def _curve(doc: GeometryDocument, closed: bool = None) -> pl_path.PLPath:
    if doc.kind not in ("path", "arc", "circuit"):
        raise _Usage(f"expected a path document, got {doc.kind}")
    if closed is True and not doc.payload.closed:
        raise _Usage("expected a closed path")
    return doc.payload


def _circuit(doc: GeometryDocument) -> pl_path.PLPath:
    if doc.kind == "witness":
        return doc.payload.circuit
    if doc.kind != "circuit":
        raise _Usage(f"expected a circuit document, got {doc.kind}")
    return doc.payload


def _drawing(doc: GeometryDocument) -> planarity.Drawing:
    if doc.kind != "drawing":
        raise _Usage(f"expected a drawing document, got {doc.kind}")
    return doc.payload


def cmd_validate(args, out) -> int:
    doc = _load(args.file, validate=False)
    x = doc.payload
    if doc.kind == "drawing":
        for e in x.edges:
            v = pl_path.validate_arc(e.arc)
            if v is not None:
                print(f"violation: edge {e.name} meets itself at {_pt(v.point)}", file=out)
                return NEGATIVE
        v = planarity.validate_drawing(x)
        if v is not None:
            print(f"violation: {_describe(v)}", file=out)
            return NEGATIVE
    elif doc.kind in ("arc", "circuit", "path"):
        v = pl_path.validate_circuit(x) if x.closed else pl_path.validate_arc(x)
        if v is not None:
            print(f"violation at {_pt(v.point)} (t={v.loc1.t} and t={v.loc2.t})", file=out)
            return NEGATIVE
    else:
        parse_document(Path(args.file).read_text(encoding="utf-8"))
    print("ok", file=out)
    return OK


def _describe(v) -> str:
    if isinstance(v, planarity.TerminalHit):
        return f"edge {v.edge} passes through terminal {v.terminal} at {_pt(v.point)}"
    return f"edges {v.edge1} and {v.edge2} meet at {_pt(v.point)}"


def cmd_parity(args, out) -> int:
    f = _curve(_load(args.file))
    c = Point(*args.point)
    dec = ray_decomposition(c, f)
    print(dec.parity, file=out)
    if args.decomposition:
        for z in dec.components:
            span = f"t={z.start.t}" if z.is_point else f"t=[{z.start.t}, {z.end.t}]"
            wrap = " wraps" if z.wraps else ""
            print(f"{z.classification.value} {span}{wrap} {z.side_before.value}{z.side_after.value}", file=out)
        print("gaps " + "".join(s.value for s in dec.gap_word), file=out)
    return OK


def cmd_inside(args, out) -> int:
    f = _circuit(_load(args.file))
    print(point_in_circuit(Point(*args.point), f).value, file=out)
    return OK


def cmd_components(args, out) -> int:
    f = _circuit(_load(args.file))
    pitch = args.pitch if args.pitch is not None else complement.default_pitch(f)
    lab = complement.grid_components(f, pitch)
    print(f"components {lab.component_count}", file=out)
    print(f"pitch {lab.pitch}", file=out)
    return OK


def cmd_offset(args, out) -> int:
    f = _circuit(_load(args.file))
    side = complement.SideLabel(args.side)
    try:
        oc = complement.bisector_offset(f, args.delta, side)
    except DeltaExhausted as exc:
        print(f"failed: {exc}", file=out)
        return NEGATIVE
    print(f"delta {oc.delta}", file=out)
    print(f"parity {oc.certificate.uniform_parity}", file=out)
    print(dump_document(GeometryDocument("path", oc.cycle)), end="", file=out)
    return OK


def cmd_route(args, out) -> int:
    f = _circuit(_load(args.file))
    r = complement.route_in_complement(f, Point(*args.src), Point(*args.dst))
    if isinstance(r, complement.Separated):
        print(f"separated {r.parity_u} {r.parity_v}", file=out)
        return NEGATIVE
    print(dump_document(GeometryDocument("arc", r)), end="", file=out)
    return OK


def cmd_chord(args, out) -> int:
    f = _circuit(_load(args.file))
    ext = pl_path.extreme_points(f)
    f0, f1 = pl_path.split_circuit(f, ext.top, ext.bottom)
    T = complement.horizontal_chord(f, f0, f1, args.y)
    print(f"chord {_pt(T.a)} {_pt(T.b)}", file=out)
    return OK


def cmd_witness(args, out) -> int:
    f = _circuit(_load(args.file))
    w = witness.separation_witness(f)
    print(f"c {_pt(w.c)} parity {w.parity_c}", file=out)
    print(f"d {_pt(w.d)} parity {w.parity_d}", file=out)
    if args.out:
        Path(args.out).write_text(dump_document(GeometryDocument("witness", w)), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(emit_svg(w), encoding="utf-8")
    return OK if (w.parity_c, w.parity_d) == (1, 0) else NEGATIVE


def cmd_claim4(args, out) -> int:
    f = _circuit(_load(args.file))
    g = witness.claim4_probe(f)
    for name in ("a", "b", "c", "d", "e", "g"):
        print(f"{name} {_pt(getattr(g, name))}", file=out)
    print(f"parity e={g.parity_e} g={g.parity_g}", file=out)
    v = planarity.validate_drawing(witness.claim4_drawing(g))
    if v is not None:
        print(f"violation: {_describe(v)}", file=out)
        return NEGATIVE
    return OK if g.parity_e != g.parity_g else NEGATIVE


def cmd_refine(args, out) -> int:
    f = _curve(_load(args.file), closed=True)
    m = args.mandatory or []
    if len(m) % 2:
        raise _Usage("--mandatory takes x y pairs")
    mandatory = [Point(m[i], m[i + 1]) for i in range(0, len(m), 2)]
    r = witness.refine_closed(f, args.h2, mandatory)
    print(dump_document(GeometryDocument("path", r)), end="", file=out)
    return OK


def cmd_drawing_check(args, out) -> int:
    d = _drawing(_load(args.file, validate=False))
    v = planarity.validate_drawing(d)
    if v is None:
        print("ok", file=out)
        return OK
    print(f"violation: {_describe(v)}", file=out)
    return NEGATIVE


def cmd_k33(args, out) -> int:
    d = _drawing(_load(args.file, validate=False))
    try:
        cert = planarity.k33_certificate(d)
    except InvalidDrawing as exc:
        print(f"invalid drawing: {_describe(exc.violation)}", file=out)
        return NEGATIVE
    except CertificateFailure as exc:
        print(f"certificate failure: {exc}", file=out)
        return NEGATIVE
    u, v = cert.missing_edge
    print(f"missing {u}-{v}", file=out)
    print("cycle " + " ".join(cert.separating_cycle), file=out)
    print(f"parity {u}={cert.parity_u} {v}={cert.parity_v}", file=out)
    return OK


def cmd_svg(args, out) -> int:
    doc = _load(args.file)
    Path(args.out).write_text(emit_svg(doc), encoding="utf-8")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pltopo", description="Exact PL plane topology tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p._negative_number_matcher = _NEGATIVE
        p.add_argument("file")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check a document's geometric invariants")
    p = add("parity", cmd_parity, "parity of the upward ray from a point")
    p.add_argument("--point", nargs=2, type=_rat, required=True, metavar=("X", "Y"))
    p.add_argument("--decomposition", action="store_true")
    p = add("inside", cmd_inside, "inside / outside / on-curve")
    p.add_argument("--point", nargs=2, type=_rat, required=True, metavar=("X", "Y"))
    p = add("components", cmd_components, "flood-fill component count")
    p.add_argument("--pitch", type=_rat)
    p = add("offset", cmd_offset, "certified bisector offset cycle")
    p.add_argument("--delta", type=_rat, required=True)
    p.add_argument("--side", choices=["left", "right"], required=True)
    p = add("route", cmd_route, "PL arc between two points off the curve")
    p.add_argument("--from", dest="src", nargs=2, type=_rat, required=True, metavar=("X", "Y"))
    p.add_argument("--to", dest="dst", nargs=2, type=_rat, required=True, metavar=("X", "Y"))
    p = add("chord", cmd_chord, "horizontal chord between the top-bottom arcs")
    p.add_argument("--y", type=_rat, required=True)
    p = add("witness", cmd_witness, "separation witness for a circuit")
    p.add_argument("--out")
    p.add_argument("--svg")
    add("claim4", cmd_claim4, "box-and-chord gadget parities")
    p = add("refine", cmd_refine, "subdivide a closed path below a spacing bound")
    p.add_argument("--h2", type=_rat, required=True)
    p.add_argument("--mandatory", nargs="*", type=_rat, metavar="X Y")
    add("drawing-check", cmd_drawing_check, "validate a plane drawing")
    add("k33-cert", cmd_k33, "parity certificate for K3,3 minus an edge")
    p = add("svg", cmd_svg, "render a document")
    p.add_argument("--out", required=True)
    return ap


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args, out)
    except ValidationError as exc:
        print(f"invalid: {exc}", file=out)
        return NEGATIVE if args.command == "validate" else USAGE
    except (ParseError, _Usage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))
