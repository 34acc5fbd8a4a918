import pytest

from pltopo.errors import InvalidDrawing, PreconditionError, WrongGraph
from pltopo.exact_geom import pt
from pltopo.pl_path import PLPath, validate_circuit
from pltopo.planarity import (
    Drawing,
    DrawingViolation,
    Edge,
    TerminalHit,
    k33_certificate,
    validate_drawing,
)

import corpus as C
import oracles

SQUARE = {"u1": pt(2, 2), "u2": pt(0, 0), "u3": pt(4, 0), "u4": pt(2, -2), "u5": pt(0, 4), "u6": pt(4, 4)}


def E(t, u, v, *mid):
    return Edge(u, v, PLPath((t[u],) + tuple(pt(*m) for m in mid) + (t[v],)))


def square_drawing():
    t = SQUARE
    return Drawing(t, (
        E(t, "u2", "u3"), E(t, "u3", "u6"), E(t, "u6", "u5"), E(t, "u5", "u2"),
        E(t, "u1", "u2"), E(t, "u1", "u6"),
        E(t, "u4", "u3"), E(t, "u4", "u5", (-1, -2), (-1, 4)),
    ))


def test_k4_is_plane():
    t = {"a": pt(0, 0), "b": pt(6, 0), "c": pt(3, 6), "o": pt(3, 2)}
    pairs = [("a", "b"), ("b", "c"), ("c", "a"), ("o", "a"), ("o", "b"), ("o", "c")]
    assert validate_drawing(Drawing(t, tuple(E(t, u, v) for u, v in pairs))) is None


def test_crossing_reported_at_point():
    t = {"a": pt(0, 0), "b": pt(2, 2), "c": pt(0, 2), "d": pt(2, 0)}
    v = validate_drawing(Drawing(t, (E(t, "a", "b"), E(t, "c", "d"))))
    assert isinstance(v, DrawingViolation) and v.point == pt(1, 1)
    assert (v.edge1, v.edge2) == ("a-b", "c-d")


def test_terminal_hit():
    t = {"a": pt(0, 0), "b": pt(4, 0), "c": pt(2, 0), "d": pt(2, 3)}
    v = validate_drawing(Drawing(t, (E(t, "a", "b"), E(t, "c", "d"))))
    assert isinstance(v, TerminalHit) and v.terminal == "c" and v.point == pt(2, 0)


def test_drawing_construction_checks():
    t = {"a": pt(0, 0), "b": pt(4, 0)}
    with pytest.raises(PreconditionError):
        Drawing(t, (Edge("a", "b", PLPath((pt(0, 0), pt(3, 0)))),))
    with pytest.raises(PreconditionError):
        Drawing(t, (E(t, "a", "b"), E(t, "b", "a", (2, 1))))
    with pytest.raises(PreconditionError):
        Drawing({"a": pt(0, 0), "b": pt(0, 0)}, ())


def test_certificate_on_square_example():
    cert = k33_certificate(square_drawing())
    assert cert.missing_edge == ("u1", "u4")
    assert (cert.parity_u, cert.parity_v) == (1, 0)
    assert set(cert.separating_cycle) == {"u3-u2", "u2-u5", "u5-u6", "u6-u3"}
    assert validate_circuit(cert.cycle_circuit) is None


def test_certificate_on_reflected_example():
    cert = k33_certificate(C.reflect(square_drawing()))
    assert cert.parity_u != cert.parity_v


def test_both_ends_outside_forces_a_crossing():
    # u1 moved outside the 4-cycle: every attempt to route its two edges
    # without touching the cycle fails.
    t = dict(SQUARE, u1=pt(6, 2))
    attempts = [
        ((6, 2), (6, -1), (-1, -1)),
        ((6, 2), (6, 6), (-1, 6), (-1, 1)),
        ((6, 2), (2, 2)),
    ]
    for corners in attempts:
        mid = tuple(corners[1:])
        arc = PLPath((t["u1"],) + tuple(pt(*m) for m in mid) + (t["u2"],))
        d = Drawing(t, (
            E(t, "u2", "u3"), E(t, "u3", "u6"), E(t, "u6", "u5"), E(t, "u5", "u2"),
            Edge("u1", "u2", arc), E(t, "u1", "u6"),
            E(t, "u4", "u3"), E(t, "u4", "u5", (-1, -2), (-1, 4)),
        ))
        assert validate_drawing(d) is not None
    # with u1 outside, its edges to u2 and u6 together with the cycle leave
    # u4's edge to u5 crossing something in every tried routing
    d = Drawing(t, (
        E(t, "u2", "u3"), E(t, "u3", "u6"), E(t, "u6", "u5"), E(t, "u5", "u2"),
        E(t, "u1", "u2", (6, -3), (-2, -3), (-2, 0)), E(t, "u1", "u6"),
        E(t, "u4", "u3"), E(t, "u4", "u5", (-1, -2), (-1, 4)),
    ))
    v = validate_drawing(d)
    assert v is not None
    with pytest.raises(InvalidDrawing):
        k33_certificate(d)


def test_wrong_graph():
    with pytest.raises(WrongGraph):
        t = {"a": pt(0, 0), "b": pt(6, 0), "c": pt(3, 6), "o": pt(3, 2)}
        pairs = [("a", "b"), ("b", "c"), ("c", "a"), ("o", "a"), ("o", "b"), ("o", "c")]
        k33_certificate(Drawing(t, tuple(E(t, u, v) for u, v in pairs)))


def _oracle(d):
    terms = dict(d.terminals)
    return oracles.drawing_is_plane(terms, [(e.u, e.v, list(e.arc.corners)) for e in d.edges])


def test_validator_matches_oracle_sample():
    ds = C.drawing_corpus(60, seed=7)
    kinds = set()
    for d in ds:
        v = validate_drawing(d)
        kinds.add(type(v).__name__)
        assert (v is None) == _oracle(d)
        if isinstance(v, DrawingViolation):
            arcs = {e.name: e.arc for e in d.edges}
            assert arcs[v.edge1].on_carrier(v.point) and arcs[v.edge2].on_carrier(v.point)
        if isinstance(v, TerminalHit):
            assert {e.name: e.arc for e in d.edges}[v.edge].on_carrier(v.point)
    assert {"NoneType", "DrawingViolation"} <= kinds


def test_cycle_assembly_is_simple_on_corpus():
    seen = 0
    for seed in range(40):
        d = C.k33_minus_edge(seed, C.corpus(200))
        if d is None or validate_drawing(d) is not None:
            continue
        cert = k33_certificate(d)
        assert validate_circuit(cert.cycle_circuit) is None
        assert cert.parity_u != cert.parity_v
        seen += 1
    assert seen >= 10
