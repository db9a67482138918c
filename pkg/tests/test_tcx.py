from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilecross.constructions import ag1, anchored_to_tile, cross_compose, gen_anchored_pair, gen_multigraph, gen_tile
from tilecross.graph import AnchoredGraph, Multigraph
from tilecross.solver import CrossingSpec, apply_planarization, crossing_number, tile_crossing_number
from tilecross.tcx import TcxError, export_dot, parse_tcx, parse_witness, write_tcx, write_witness
from tilecross.tiles import cross_tile, tmin

from conftest import FIXTURES, complete


def test_parse_weighted_graph():
    g = parse_tcx("graph\nv a\nv b\ne a b w=3\n")
    assert isinstance(g, Multigraph)
    assert g.vertices == ("a", "b") and g.weight(0) == 3


def test_parse_tile_fixture():
    t = parse_tcx((FIXTURES / "x.tcx").read_text())
    assert t == cross_tile()


def test_parse_anchored_fixture():
    a = parse_tcx((FIXTURES / "ag1.tcx").read_text())
    assert a == ag1()


def test_explicit_ids():
    g = parse_tcx((FIXTURES / "weighted.tcx").read_text())
    assert g.edge_ids == (0, 2, 7)
    assert g.weight(2) == 2
    assert "id=7" in write_tcx(g)


@pytest.mark.parametrize(
    "text, line, msg",
    [
        ("graph\ne x1 y1\ne x2 y2\nlwall x1 x1\nrwall y1 y2\n", 4, "repeated wall vertex"),
        ("graph\nv a\nv a\n", 3, "duplicate vertex id"),
        ("graph\ne a b id=1\ne b c id=1\n", 3, "duplicate edge id"),
        ("graph\ne a a\n", 2, "self-loop"),
        ("graph\ne a b w=x\n", 2, "w=<nonnegative integer>"),
        ("graph\ne a b w=0\n", 2, "at least 1"),
        ("graph\nfoo\n", 2, "unknown keyword"),
        ("v a\n", 1, "must start"),
        ("", 1, "must start"),
        ("graph\ne a b\nlwall a\n", 3, "both 'lwall' and 'rwall'"),
        ("graph\ne a b\nlwall a\nrwall b\nanchors a\n", 5, "both walls and anchors"),
        ("graph\ne a b\nanchors zz\n", 3, "unknown vertex"),
    ],
)
def test_parse_errors(text, line, msg):
    with pytest.raises(TcxError, match=msg) as info:
        parse_tcx(text)
    assert info.value.line == line


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.tcx")), ids=lambda p: p.name)
def test_fixture_round_trip(path):
    obj = parse_tcx(path.read_text())
    text = write_tcx(obj)
    assert parse_tcx(text) == obj
    assert write_tcx(parse_tcx(text)) == text


def test_tmin_canonical_text():
    assert write_tcx(tmin()) == write_tcx(parse_tcx((FIXTURES / "tmin.tcx").read_text()))


def test_composition_round_trip():
    g = cross_compose([tmin(), tmin()], 1).graph
    assert parse_tcx(write_tcx(g)) == g


def test_anchors_written_from_least_anchor():
    g = Multigraph.from_edges([("p", "q"), ("r", "s")])
    text = write_tcx(AnchoredGraph(g, ("r", "q", "s", "p")))
    assert text.splitlines()[-1] == "anchors p r q s"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["graph", "tile", "anchored", "gadget"]))
def test_round_trip_property(seed, kind):
    if kind == "graph":
        obj = gen_multigraph(seed, 6, 9, 3)
    elif kind == "tile":
        obj = gen_tile(seed, 6, 8, 2)
    elif kind == "anchored":
        obj = gen_anchored_pair(seed, 2, 3)
    else:
        obj = anchored_to_tile(gen_anchored_pair(seed, 2, 2))[0]
    assert parse_tcx(write_tcx(obj)) == obj


def test_witness_round_trip():
    spec = CrossingSpec.build([(0, 3), (0, 5), (1, 4)], {0: (5, 3)})
    text = write_witness(spec)
    assert "order 0 5 3" in text
    assert parse_witness(text) == spec


@pytest.mark.parametrize(
    "text, msg",
    [("x 1 2\n", "must start"), ("witness\nx 1\n", "expected 'x E F'"), ("witness\nx a 2\n", "edge id"),
     ("witness\norder 1 2\norder 1 3\n", "repeated order"), ("witness\ny 1 2\n", "unknown keyword")],
)
def test_witness_errors(text, msg):
    with pytest.raises(TcxError, match=msg):
        parse_witness(text)


def test_dot_of_k4_has_no_dummies():
    dot = export_dot(apply_planarization(complete(4), CrossingSpec()))
    assert dot.startswith("graph ")
    assert "->" not in dot
    assert dot.count(" -- ") == 6
    assert "square" not in dot


def test_dot_of_cross_tile_shows_one_dummy():
    x = cross_tile()
    res = tile_crossing_number(x, 1)
    p = apply_planarization(x.graph, res.witness)
    dot = export_dot(p, x)
    assert dot.count("shape=square") == 1
    (d,) = p.dummies
    assert p.derived.degree(d) == 4
    assert 'xlabel="L1"' in dot and 'xlabel="R2"' in dot


def test_dot_labels_weights_and_anchors():
    dot = export_dot(apply_planarization(tmin().graph, CrossingSpec()), tmin())
    assert 'label="2"' in dot and 'xlabel="L2"' in dot
    a = ag1()
    dot = export_dot(apply_planarization(a.graph, CrossingSpec()), a)
    assert 'xlabel="A3"' in dot


def test_dot_of_k5_witness():
    g = complete(5)
    dot = export_dot(apply_planarization(g, crossing_number(g, 1).witness))
    assert dot.count("shape=square") == 1
    assert dot.count(" -- ") == 12
