from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilecross.constructions import gen_diag_sep_tile, gen_tile
from tilecross.graph import Edge, Multigraph
from tilecross.solver import tile_crossing_number
from tilecross.tiles import (
    Bullet,
    Tile,
    TileError,
    cross_tile,
    cross_tiles,
    invert_left,
    invert_right,
    join,
    join_seq,
    join_seq_with_maps,
    tmin,
    validate_diag_sep,
)
from tilecross.topology import is_tile_planar


def test_tile_validation():
    g = Multigraph.from_edges([("a", "b"), ("c", "d")])
    with pytest.raises(TileError, match="repeated wall vertex in left wall"):
        Tile(g, ("a", "a"), ("c",))
    with pytest.raises(TileError, match="overlap"):
        Tile(g, ("a", "b"), ("b", "c"))
    with pytest.raises(TileError, match="not in the graph"):
        Tile(g, ("a",), ("zz",))


def test_inversions_are_involutions():
    t = tmin()
    assert invert_right(invert_right(t)) == t
    assert invert_left(invert_left(t)) == t
    assert invert_right(t).rwall == ("y2", "y1")


def test_join_identifies_walls():
    t = join(cross_tile(), cross_tile())
    assert t.lwall == ("x1", "x2")
    assert len(t.graph.vertices) == 6
    assert len(t.graph.edges) == 4
    # the second copy's y vertices are renamed, the shared wall keeps t1's names
    assert set(t.rwall).isdisjoint({"y1", "y2"})
    assert t.graph.degree("y1") == 2 and t.graph.degree("y2") == 2


def test_join_wall_mismatch():
    g = Multigraph.from_edges([("a", "b"), ("b", "c")])
    with pytest.raises(TileError, match="wall length mismatch"):
        join(Tile(g, ("a",), ("b", "c")), Tile(g, ("a",), ("c",)))


def test_join_seq_maps_cover_everything():
    tiles = [tmin(), cross_tile(), tmin()]
    joined, maps = join_seq_with_maps(tiles)
    assert len(maps) == 3
    ids = [e for m in maps for e in m.edge.values()]
    assert sorted(ids) == sorted(joined.graph.edge_ids)
    with pytest.raises(TileError):
        join_seq([])


# values from the brute-force oracle
@pytest.mark.parametrize(
    "tile, value",
    [
        (cross_tiles(1), 1),
        (cross_tiles(2), 0),
        (cross_tiles(3), 1),
        (cross_tiles(4), 0),
        (invert_right(cross_tiles(1)), 0),
        (invert_right(cross_tiles(2)), 1),
        (tmin(), 0),
        (Tile(Multigraph.from_edges([("x1", "y2", 2), ("x2", "y1", 3)]), ("x1", "x2"), ("y1", "y2")), 6),
    ],
)
def test_tile_crossing_numbers(tile, value):
    assert tile_crossing_number(tile, 6).value == value


def test_tmin_is_diag_separated():
    rep = validate_diag_sep(tmin())
    assert rep
    w = rep.witness
    assert (w.t, w.w1, w.w2) == (2, 1, 1)
    assert w.q_path == ("x2", "s1", "s2", "y1")
    assert w.g1_vertices >= {"x1", "u"} and w.g2_vertices >= {"y2", "v"}


def test_light_path_violates_weight():
    rep = validate_diag_sep(tmin(1))
    assert not rep
    assert rep.first.bullet is Bullet.WEIGHT


def test_cross_tile_is_not_diag_separated():
    rep = validate_diag_sep(cross_tile())
    assert not rep
    assert rep.first.bullet is Bullet.PLANAR


def test_chord_on_path_reported():
    t = tmin()
    g = Multigraph(t.graph.vertices, t.graph.edges + (Edge(99, "x2", "s2", 2),))
    rep = validate_diag_sep(t.with_graph(g))
    assert not rep
    assert any(v.bullet in (Bullet.NO_CHORD, Bullet.PARTITION) for v in rep.violations)


def test_degree_one_violation():
    t = tmin()
    g = Multigraph(t.graph.vertices, t.graph.edges + (Edge(99, "x1", "u", 1),))
    rep = validate_diag_sep(t.with_graph(g))
    assert Bullet.DEGREE_ONE in {v.bullet for v in rep.violations}


def test_validator_needs_width_two():
    with pytest.raises(TileError):
        validate_diag_sep(join_seq([Tile(Multigraph.from_edges([("a", "b")]), ("a",), ("b",))]))


def _as_nx(t: Tile) -> nx.MultiGraph:
    h = nx.MultiGraph()
    for v in t.graph.vertices:
        role = ("L", t.lwall.index(v)) if v in t.lwall else ("R", t.rwall.index(v)) if v in t.rwall else None
        h.add_node(v, role=role)
    for e in t.graph.edges:
        h.add_edge(e.u, e.v, weight=e.weight)
    return h


def _isomorphic(t1: Tile, t2: Tile) -> bool:
    return nx.is_isomorphic(
        _as_nx(t1),
        _as_nx(t2),
        node_match=lambda a, b: a["role"] == b["role"],
        edge_match=lambda a, b: sorted(d["weight"] for d in a.values()) == sorted(d["weight"] for d in b.values()),
    )


def test_cross_tile_join_associative():
    x = cross_tile()
    assert _isomorphic(join(join(x, x), x), join(x, join(x, x)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_join_is_associative(s1, s2):
    a, b, c = gen_tile(s1, 5, 6, 2), gen_tile(s2, 5, 6), tmin()
    assert _isomorphic(join(join(a, b), c), join(a, join(b, c)))


def test_left_and_right_inversion_agree():
    for t in (cross_tile(), tmin(), cross_tiles(3)):
        assert tile_crossing_number(invert_left(t), 3).value == tile_crossing_number(invert_right(t), 3).value


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_join_is_subadditive(seed):
    # drawing the parts side by side is a drawing of the join
    a, b = gen_tile(seed, 5, 6), gen_tile(seed + 1, 5, 6)
    ra, rb = tile_crossing_number(a, 2), tile_crossing_number(b, 2)
    if ra.value is None or rb.value is None:
        return
    j = tile_crossing_number(join(a, b), ra.value + rb.value)
    assert j.value is not None and j.value <= ra.value + rb.value


def test_inversions_commute():
    t = join(tmin(), cross_tile())
    assert invert_left(invert_right(t)) == invert_right(invert_left(t))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2))
def test_accepted_tiles_obey_twist_bound(seed, s1, s2):
    t = gen_diag_sep_tile(seed, s1, s2, inner1=0, inner2=0)
    w = validate_diag_sep(t).witness
    assert w is not None and is_tile_planar(t)
    res = tile_crossing_number(invert_right(t), w.w1 * w.w2)
    assert res.value is not None and res.value <= w.w1 * w.w2
