"""Tiles, wall inversions, joins and the diagonal-separation validator."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .graph import (
    Edge,
    EdgeId,
    GraphError,
    Multigraph,
    VertexId,
    connected_components,
    fresh_name,
    induced_weight,
    is_connected,
)
from .topology import is_tile_planar


class TileError(GraphError):
    pass


@dataclass(frozen=True)
class Tile:
    """A graph with a left wall and a right wall (disjoint vertex sequences)."""

    graph: Multigraph
    lwall: tuple[VertexId, ...]
    rwall: tuple[VertexId, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lwall", tuple(self.lwall))
        object.__setattr__(self, "rwall", tuple(self.rwall))
        vs = set(self.graph.vertices)
        for name, wall in (("left", self.lwall), ("right", self.rwall)):
            if len(set(wall)) != len(wall):
                raise TileError(f"repeated wall vertex in {name} wall")
            for v in wall:
                if v not in vs:
                    raise TileError(f"{name} wall vertex {v!r} is not in the graph")
        shared = set(self.lwall) & set(self.rwall)
        if shared:
            raise TileError(f"walls overlap in {sorted(shared)}")

    def with_graph(self, graph: Multigraph) -> Tile:
        return Tile(graph, self.lwall, self.rwall)


def make_tile(g: Multigraph, lwall: Sequence[VertexId], rwall: Sequence[VertexId]) -> Tile:
    return Tile(g, tuple(lwall), tuple(rwall))


def invert_right(t: Tile) -> Tile:
    return Tile(t.graph, t.lwall, t.rwall[::-1])


def invert_left(t: Tile) -> Tile:
    return Tile(t.graph, t.lwall[::-1], t.rwall)


@dataclass(frozen=True)
class JoinMaps:
    """Where each input vertex and edge ended up in a joined tile."""

    vertex: Mapping[VertexId, VertexId]
    edge: Mapping[EdgeId, EdgeId]


def join_with_maps(t1: Tile, t2: Tile) -> tuple[Tile, JoinMaps, JoinMaps]:
    """Join ``t1`` and ``t2``, identifying ``t1.rwall[i]`` with ``t2.lwall[i]``.

    Vertices of ``t1`` keep their names; the remaining vertices of ``t2`` are
    renamed with a numeric suffix when they clash. Edges of ``t2`` get fresh
    ids after those of ``t1``.
    """
    if len(t1.rwall) != len(t2.lwall):
        raise TileError(
            f"wall length mismatch: right wall has {len(t1.rwall)} vertices, "
            f"left wall has {len(t2.lwall)}"
        )
    g1, g2 = t1.graph, t2.graph
    taken = set(g1.vertices)
    vmap2: dict[VertexId, VertexId] = dict(zip(t2.lwall, t1.rwall))
    for v in g2.vertices:
        if v not in vmap2:
            name = fresh_name(v, taken)
            taken.add(name)
            vmap2[v] = name
    base = g1.next_edge_id()
    emap2 = {e.id: base + i for i, e in enumerate(g2.edges)}
    edges = list(g1.edges) + [Edge(emap2[e.id], vmap2[e.u], vmap2[e.v], e.weight) for e in g2.edges]
    joined = Tile(
        Multigraph(taken, edges),
        t1.lwall,
        tuple(vmap2[v] for v in t2.rwall),
    )
    maps1 = JoinMaps({v: v for v in g1.vertices}, {e.id: e.id for e in g1.edges})
    return joined, maps1, JoinMaps(vmap2, emap2)


def join(t1: Tile, t2: Tile) -> Tile:
    return join_with_maps(t1, t2)[0]


def join_seq_with_maps(tiles: Sequence[Tile]) -> tuple[Tile, list[JoinMaps]]:
    """Left fold of :func:`join`, with the position of every input in the result."""
    if not tiles:
        raise TileError("cannot join an empty sequence of tiles")
    acc = tiles[0]
    maps = [JoinMaps({v: v for v in acc.graph.vertices}, {e.id: e.id for e in acc.graph.edges})]
    for t in tiles[1:]:
        acc, _, m2 = join_with_maps(acc, t)
        maps.append(m2)
    return acc, maps


def join_seq(tiles: Sequence[Tile]) -> Tile:
    return join_seq_with_maps(tiles)[0]


# -- fixtures ---------------------------------------------------------------


def cross_tile() -> Tile:
    """The X tile: walls (x1, x2) and (y1, y2) with edges x1-y2 and x2-y1."""
    g = Multigraph.from_edges([("x1", "y2"), ("x2", "y1")])
    return Tile(g, ("x1", "x2"), ("y1", "y2"))


def cross_tiles(m: int) -> Tile:
    return join_seq([cross_tile()] * m)


def tmin(q_weight: int = 2) -> Tile:
    """Smallest diagonally separated tile.

    Thick path x2-s1-s2-y1, with x1-u-s1 hanging below it and y2-v-s2 above.
    """
    g = Multigraph.from_edges(
        [
            ("x1", "u"),
            ("u", "s1"),
            ("y2", "v"),
            ("v", "s2"),
            ("x2", "s1", q_weight),
            ("s1", "s2", q_weight),
            ("s2", "y1", q_weight),
        ]
    )
    return Tile(g, ("x1", "x2"), ("y1", "y2"))


# -- diagonal separation ------------------------------------------------------


class Bullet(str, enum.Enum):
    PLANAR = "planar tile"
    THICK_PATH = "thick path from x2 to y1"
    PARTITION = "G1, G2 vertex-disjoint and covering V(G) minus {x2, y1}"
    DEGREE_ONE = "x1, y2 of degree one in G with weight-1 edges"
    CONNECTED = "G, G1 - V(Q) and G2 - V(Q) connected"
    NO_CHORD = "no edge of G1 u G2 with both ends in V(Q) u {x1, y2}"
    WEIGHT = "weight t >= w1*w2 + 1"


@dataclass(frozen=True)
class Violation:
    bullet: Bullet
    element: str

    def __str__(self) -> str:
        return f"{self.bullet.value}: {self.element}"


@dataclass(frozen=True)
class DiagSepWitness:
    x1: VertexId
    x2: VertexId
    y1: VertexId
    y2: VertexId
    q_path: tuple[VertexId, ...]
    q_edges: tuple[EdgeId, ...]
    g1_vertices: frozenset[VertexId]
    g1_edges: frozenset[EdgeId]
    g2_vertices: frozenset[VertexId]
    g2_edges: frozenset[EdgeId]
    t: int
    w1: int
    w2: int


@dataclass(frozen=True)
class DiagSepReport:
    witness: DiagSepWitness | None
    violations: tuple[Violation, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.witness is not None

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


MAX_Q_CANDIDATES = 256


def _q_candidates(g: Multigraph, x1, x2, y1, y2) -> Iterable[tuple[int, list[VertexId], list[EdgeId]]]:
    for t in sorted({e.weight for e in g.edges}, reverse=True):
        h = nx.Graph()
        pick: dict[frozenset, EdgeId] = {}
        for e in g.edges:
            if e.weight != t or {e.u, e.v} & {x1, y2}:
                continue
            key = e.ends
            if key not in pick:
                pick[key] = e.id
                h.add_edge(e.u, e.v)
        if x2 not in h or y1 not in h:
            continue
        paths = sorted(nx.all_simple_paths(h, x2, y1), key=lambda p: (len(p), p))
        for p in paths:
            yield t, p, [pick[frozenset(ab)] for ab in zip(p, p[1:])]


def _check_candidate(
    g: Multigraph, x1, x2, y1, y2, t: int, path: list[VertexId], q_edges: list[EdgeId]
) -> tuple[list[Violation], DiagSepWitness | None]:
    bad: list[Violation] = []
    qv = set(path)
    qe = set(q_edges)
    others = [e for e in g.edges if e.id not in qe]

    for e in others:
        if {e.u, e.v} & {x2, y1}:
            bad.append(Violation(Bullet.PARTITION, f"edge {e.id} at {x2 if x2 in (e.u, e.v) else y1} is not on Q"))
    rest = g.without_vertices(qv)
    comps = connected_components(rest)
    c1 = next(c for c in comps if x1 in c)
    c2 = next(c for c in comps if y2 in c)
    if c1 == c2:
        bad.append(Violation(Bullet.PARTITION, f"{x1} and {y2} are joined outside Q"))
    side: dict[VertexId, set[int]] = {s: set() for s in path[1:-1]}
    for e in others:
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if a in side and b not in qv:
                side[a].add(1 if b in c1 else 2 if b in c2 else 0)
    for s in path[1:-1]:
        if {1, 2} <= side[s]:
            bad.append(Violation(Bullet.PARTITION, f"Q vertex {s} touches both G1 and G2"))

    for x in (x1, y2):
        inc = g.incident(x)
        if len(inc) != 1:
            bad.append(Violation(Bullet.DEGREE_ONE, f"{x} has degree {len(inc)}"))
        elif g.weight(inc[0]) != 1:
            bad.append(Violation(Bullet.DEGREE_ONE, f"edge at {x} has weight {g.weight(inc[0])}"))

    if not is_connected(g):
        bad.append(Violation(Bullet.CONNECTED, "G is disconnected"))
    for c in comps:
        if c not in (c1, c2):
            bad.append(Violation(Bullet.CONNECTED, f"stray component {sorted(c)} outside G1, G2"))

    ends = qv | {x1, y2}
    for e in others:
        if e.u in ends and e.v in ends:
            bad.append(Violation(Bullet.NO_CHORD, f"edge {e.id} ({e.u}-{e.v})"))

    w1 = induced_weight(g, c1)
    w2 = induced_weight(g, c2)
    if t < w1 * w2 + 1:
        bad.append(Violation(Bullet.WEIGHT, f"t={t}, w1={w1}, w2={w2}"))
    if bad:
        return bad, None

    g1v = set(c1) | {s for s in path[1:-1] if 1 in side[s] or not side[s]}
    g2v = set(c2) | {s for s in path[1:-1] if 2 in side[s]}
    g1e = {e.id for e in others if e.u in g1v and e.v in g1v}
    g2e = {e.id for e in others if e.u in g2v and e.v in g2v}
    wit = DiagSepWitness(
        x1, x2, y1, y2,
        tuple(path), tuple(q_edges),
        frozenset(g1v), frozenset(g1e), frozenset(g2v), frozenset(g2e),
        t, w1, w2,
    )
    return [], wit


def validate_diag_sep(t: Tile) -> DiagSepReport:
    """Search for a decomposition G = G1 u G2 u Q witnessing diagonal separation.

    Q is tried among uniform-weight paths from x2 to y1 avoiding x1 and y2,
    heaviest weight first. The report carries either a witness or the
    violations found for the most promising candidate, structural
    conditions before the weight inequality.
    """
    if len(t.lwall) != 2 or len(t.rwall) != 2:
        raise TileError("diagonal separation needs walls of size two")
    (x1, x2), (y1, y2) = t.lwall, t.rwall
    g = t.graph
    planar = is_tile_planar(t)
    head = [] if planar else [Violation(Bullet.PLANAR, "tile has no crossing-free tile drawing")]
    best: list[Violation] | None = None
    for tq, path, q_edges in islice(_q_candidates(g, x1, x2, y1, y2), MAX_Q_CANDIDATES):
        bad, wit = _check_candidate(g, x1, x2, y1, y2, tq, path, q_edges)
        if wit is not None and planar:
            return DiagSepReport(wit)
        if best is None:
            best = bad
    if best is None:
        best = [Violation(Bullet.THICK_PATH, f"no uniform-weight path from {x2} to {y1}")]
    return DiagSepReport(None, tuple(head + best))
