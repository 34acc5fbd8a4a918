"""The ten acceptance criteria, one test each.

Each test records a one-line PASS/FAIL summary (printed, and repeated in the
terminal summary) before asserting, so a failing criterion still reports
its counts.
"""

import random
import time
from fractions import Fraction as F

from pltopo.complement import Separated, SideLabel, bisector_offset, min_feature2, route_in_complement
from pltopo.errors import CertificateFailure, DeltaExhausted
from pltopo.exact_geom import Point, contains_point, dist2, sqrt_lower
from pltopo.parity import Location, parity, point_in_circuit, ray_decomposition
from pltopo.pl_path import PLPath, ccw
from pltopo.planarity import Edge, k33_certificate, validate_drawing
from pltopo.witness import claim4_drawing, claim4_probe, refine_closed, separation_witness, verify_witness

import corpus as C
import oracles
from conftest import record


def _labelings(circuits, cache={}):
    key = id(circuits)
    if key not in cache:
        cache[key] = [C.labeling_of(f) for f in circuits]
    return cache[key]


def test_criterion_01_parity_matches_flood_fill(circuits):
    t0 = time.perf_counter()
    assert len(circuits) >= 1000
    kinds = {"rect": 0, "general": 0}
    queries = mismatches = 0
    for i, (f, lab) in enumerate(zip(circuits, _labelings(circuits))):
        assert f.k <= 20 and all(c.x.denominator <= 16 and c.y.denominator <= 16 for c in f.corners)
        assert lab.pitch ** 2 * 64 < min_feature2(f)
        kinds["rect" if all(s.a.x == s.b.x or s.a.y == s.b.y for s in f.segments()) else "general"] += 1
        qs = C.query_points(f, lab, 12, seed=i)
        assert len(qs) >= 10
        for q in qs:
            queries += 1
            got = point_in_circuit(q, f)
            want = Location.INSIDE if lab.is_inside_label(lab.label_at(q)) else Location.OUTSIDE
            mismatches += got is not want
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and min(kinds.values()) > 0 and dt <= 120
    record(1, ok, f"{len(circuits)} circuits ({kinds['rect']} rectilinear), {queries} queries, "
                  f"{mismatches} mismatches, {dt:.1f}s")
    assert ok


def _disjoint_path(rng, f, lab, seed):
    """A PL path missing f: a grid route half the time, else a random walk."""
    for attempt in range(20):
        qs = C.query_points(f, lab, 2, seed=seed * 100 + attempt)
        if len(qs) < 2:
            continue
        u, v = qs
        if rng.random() < 0.5:
            if parity(u, f) != parity(v, f):
                continue
            r = route_in_complement(f, u, v)
            if not isinstance(r, Separated):
                return r
        else:
            g = C.random_walk_between(rng, u, v, k_max=3, den=16)
            if dist2(g, f) > 0:
                return g
    return None


def test_criterion_02_parity_constant_along_disjoint_paths(circuits):
    rng = random.Random(2)
    labs = _labelings(circuits)
    pairs = failures = 0
    for i, (f, lab) in enumerate(zip(circuits, labs)):
        if pairs >= 250:
            break
        g = _disjoint_path(rng, f, lab, i)
        if g is None:
            continue
        pairs += 1
        samples = [g.point_at(F(g.k * j, 31)) for j in range(32)]
        failures += len({parity(z, f) for z in samples}) != 1
    ok = pairs >= 200 and failures == 0
    record(2, ok, f"{pairs} pairs x 32 samples, {failures} non-constant")
    assert ok


def _strip_queries(rng, paths, lo, hi, count):
    """Points with lo < x < hi off every path; some on corner verticals."""
    xs = sorted({c.x for g in paths for c in g.corners if lo < c.x < hi})
    ys = [c.y for g in paths for c in g.corners]
    out = []
    for _ in range(20 * count):
        if len(out) == count:
            break
        if xs and rng.random() < 0.4:
            x = rng.choice(xs)
        else:
            x = lo + (hi - lo) * F(rng.randint(1, 63), 64)
        q = Point(x, F(rng.randint(int(min(ys)) * 32 - 32, int(max(ys)) * 32 + 32), 32))
        if not any(C.on_curve(g, q) for g in paths):
            out.append(q)
    return out


def test_criterion_03_additivity_mod_2():
    rng = random.Random(3)
    splits = checks = failures = 0
    while splits < 600:
        P = Point(F(rng.randint(-32, 32), 8), F(rng.randint(-32, 32), 8))
        Q = Point(F(rng.randint(-32, 32), 8), F(rng.randint(-32, 32), 8))
        if P.x == Q.x:
            continue
        f1 = C.random_walk_between(rng, P, Q, rectilinear=rng.random() < 0.3)
        f2 = C.random_walk_between(rng, Q, P, rectilinear=rng.random() < 0.3)
        f3 = PLPath(f1.corners + f2.corners[1:], True)
        lo, hi = min(P.x, Q.x), max(P.x, Q.x)
        qs = _strip_queries(rng, (f1, f2), lo, hi, 4)
        if not qs:
            continue
        splits += 1
        for c in qs:
            checks += 1
            failures += parity(c, f3) != parity(c, f1) ^ parity(c, f2)
    ok = splits >= 500 and failures == 0
    record(3, ok, f"{splits} splits, {checks} queries, {failures} XOR failures")
    assert ok


def test_criterion_04_below_all():
    rng = random.Random(4)
    maps = failures = bad_words = 0
    while maps < 600:
        f = C.random_open_map(rng, den=rng.choice((1, 4, 8)))
        lo, hi = sorted((f.start.x, f.end.x))
        inner = sorted({c.x for c in f.corners if lo < c.x < hi})
        x = rng.choice(inner) if inner and rng.random() < 0.4 else lo + (hi - lo) * F(rng.randint(1, 31), 32)
        c = Point(x, min(p.y for p in f.corners) - F(rng.randint(1, 16), 8))
        maps += 1
        dec = ray_decomposition(c, f)
        failures += dec.parity != 1
        w = dec.gap_word
        bad_words += not (len(w) >= 2 and w[0] != w[-1] and dec.one_sided_gaps)
    ok = failures == 0 and bad_words == 0
    record(4, ok, f"{maps} open maps, {failures} parity != 1, {bad_words} gap words with equal ends")
    assert ok


def test_criterion_05_separation_witness(circuits):
    t0 = time.perf_counter()
    bad_parity = no_crossing = paths = 0
    for i, f in enumerate(circuits):
        w = separation_witness(f)
        bad_parity += (w.parity_c, w.parity_d) != (1, 0)
        rng = random.Random(5000 + i)
        for j in range(100):
            g = C.random_walk_between(rng, w.c, w.d, k_max=4, den=8, rectilinear=j % 2 == 1)
            paths += 1
            no_crossing += verify_witness(w, g) is None
    ok = bad_parity == 0 and no_crossing == 0
    record(5, ok, f"{len(circuits)} witnesses, {bad_parity} bad parities, {paths} paths, "
                  f"{no_crossing} NoCrossing, {time.perf_counter() - t0:.1f}s")
    assert ok


def test_criterion_06_two_components(circuits):
    counts = {}
    for lab in _labelings(circuits):
        counts[lab.component_count] = counts.get(lab.component_count, 0) + 1
    ok = set(counts) == {2}
    record(6, ok, f"component counts {dict(sorted(counts.items()))}")
    assert ok


def test_criterion_07_offsets(circuits):
    failed = wrong = 0
    for f in circuits:
        g = ccw(f)
        delta = sqrt_lower(min_feature2(f)) / 4
        for side, bit in ((SideLabel.LEFT, 1), (SideLabel.RIGHT, 0)):
            try:
                o = bisector_offset(g, delta, side, max_halvings=0)
            except DeltaExhausted:
                failed += 1
                continue
            wrong += o.certificate.uniform_parity != bit or not o.certificate.disjoint_from_circuit
    ok = failed == 0 and wrong == 0
    record(7, ok, f"{2 * len(circuits)} offsets at delta = min-feature/4, {failed} uncertified, {wrong} wrong parity")
    assert ok


def _dev2(z, f):
    if any(contains_point(s, z) for s in f.segments()):
        return F(0)
    return dist2(z, f)


def test_criterion_08_refinement_bounds(circuits):
    spacing_bad = dev_bad = runs = 0
    worst = F(0)
    for f in circuits:
        for h2 in (F(1), F(1, 4), F(1, 16)):
            r = refine_closed(f, h2)
            runs += 1
            segs = r.segments()
            spacing_bad += any((s.b.x - s.a.x) ** 2 + (s.b.y - s.a.y) ** 2 >= h2 for s in segs)
            zs = list(r.corners) + [s.midpoint() for s in segs]
            d = max(_dev2(z, f) for z in zs)
            worst = max(worst, d / h2)
            dev_bad += d > h2 / 4
    ok = spacing_bad == 0 and dev_bad == 0
    record(8, ok, f"{runs} refinements, {spacing_bad} spacing failures, {dev_bad} deviation failures, "
                  f"worst deviation2/h2 {worst}")
    assert ok


def _oracle_plane(d):
    return oracles.drawing_is_plane(dict(d.terminals), [(e.u, e.v, list(e.arc.corners)) for e in d.edges])


def test_criterion_09_drawings_and_k33(circuits):
    ds = C.drawing_corpus(250, seed=9)
    disagree = 0
    positives = {"K4": 0, "K2,3": 0}
    negatives = 0
    for d in ds:
        v = validate_drawing(d)
        disagree += (v is None) != _oracle_plane(d)
        if v is None:
            kind = {4: "K4", 5: "K2,3"}.get(len(d.terminals), "other")
            positives[kind] = positives.get(kind, 0) + 1
        else:
            negatives += 1

    certs = cert_failures = equal = 0
    ninth = ninth_ok = 0
    seed = 0
    while certs < 60 and seed < 400:
        d = C.k33_minus_edge(seed, circuits[:300])
        seed += 1
        if d is None or validate_drawing(d) is not None:
            continue
        try:
            cert = k33_certificate(d)
        except CertificateFailure:
            cert_failures += 1
            continue
        certs += 1
        equal += cert.parity_u == cert.parity_v
        u, w = cert.missing_edge
        for arc in C.ninth_arcs(d, cert.cycle_circuit, u, w, 10, seed):
            ninth += 1
            full = d.with_edge(Edge(u, w, arc))
            ninth_ok += validate_drawing(full) is not None
    ok = (len(ds) >= 200 and disagree == 0 and min(positives["K4"], positives["K2,3"]) > 0 and negatives > 0
          and certs >= 50 and cert_failures == 0 and equal == 0 and ninth >= 500 and ninth_ok == ninth)
    record(9, ok, f"{len(ds)} drawings ({positives} plane, {negatives} not), {disagree} oracle disagreements; "
                  f"{certs} certificates, {cert_failures} CertificateFailure, {equal} equal parities; "
                  f"{ninth_ok}/{ninth} ninth arcs rejected")
    assert ok


def test_criterion_10_claim4(circuits):
    bad_parity = bad_drawing = 0
    for f in circuits:
        g = claim4_probe(f)
        bad_parity += (g.parity_e, g.parity_g) != (1, 0)
        bad_drawing += validate_drawing(claim4_drawing(g)) is not None
    ok = bad_parity == 0 and bad_drawing == 0
    record(10, ok, f"{len(circuits)} gadgets, {bad_parity} wrong parities, {bad_drawing} non-plane arc sets")
    assert ok
