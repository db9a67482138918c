"""Tile gadgets built from anchored graphs, cross-compositions, and seeded generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import (
    AnchoredGraph,
    Edge,
    EdgeId,
    GraphError,
    Multigraph,
    VertexId,
    connected_components,
    fresh_name,
    induced_weight,
)
from .tiles import DiagSepWitness, JoinMaps, Tile, invert_right, join_seq_with_maps, validate_diag_sep
from .topology import is_anchored_planar, is_tile_planar


class ConstructionError(GraphError):
    pass


def open_sigma(a: AnchoredGraph, comps: Sequence[frozenset[VertexId]]) -> tuple[VertexId, ...]:
    """Cut the cyclic anchor order at the first switch between components.

    The result starts in one component and ends in the other.
    """
    sigma = a.sigma
    side = {v: i for i, c in enumerate(comps) for v in c}
    for i in range(len(sigma)):
        if side[sigma[i]] != side[sigma[i - 1]]:
            return sigma[i:] + sigma[:i]
    raise ConstructionError("no valid opening: anchors all lie in one component")


def anchored_to_tile(a: AnchoredGraph) -> tuple[Tile, DiagSepWitness]:
    """Turn a two-component anchored graph into a diagonally separated tile.

    A heavy path x2, s1, ..., sa, y1 replaces the disc boundary: s_i is joined
    to the i-th anchor of the opened order, x1 hangs off the first anchor and
    y2 off the last. Every edge touching the path gets weight
    t = (W(H1)+1)(W(H2)+1)+1, with W the total edge weight of a component.
    Edges of the input keep their ids.
    """
    g = a.graph
    comps = connected_components(g)
    if len(comps) != 2:
        raise ConstructionError(f"anchored graph must have exactly two components, found {len(comps)}")
    for c in comps:
        if not c & a.anchors:
            raise ConstructionError("no valid opening: a component carries no anchor")
        if not is_anchored_planar(a.restrict(c)):
            raise ConstructionError(f"component containing {min(c)!r} is not anchored-planar")
    opened = open_sigma(a, comps)
    h1 = next(c for c in comps if opened[0] in c)
    h2 = next(c for c in comps if c is not h1)
    t = (induced_weight(g, h1) + 1) * (induced_weight(g, h2) + 1) + 1

    taken = set(g.vertices)

    def fresh(base: str) -> VertexId:
        name = fresh_name(base, taken)
        taken.add(name)
        return name

    x1, x2, y1, y2 = fresh("x1"), fresh("x2"), fresh("y1"), fresh("y2")
    s = [fresh(f"s{i + 1}") for i in range(len(opened))]
    edges = list(g.edges)
    nid = g.next_edge_id()

    def add(u: VertexId, v: VertexId, w: int) -> None:
        nonlocal nid
        edges.append(Edge(nid, u, v, w))
        nid += 1

    add(x1, opened[0], 1)
    add(y2, opened[-1], 1)
    path = [x2] + s + [y1]
    for u, v in zip(path, path[1:]):
        add(u, v, t)
    for si, anchor in zip(s, opened):
        add(si, anchor, t)
    tile = Tile(Multigraph(taken, edges), (x1, x2), (y1, y2))
    report = validate_diag_sep(tile)
    if report.witness is None:
        raise ConstructionError(f"constructed tile is not diagonally separated: {report.first}")
    return tile, report.witness


@dataclass(frozen=True)
class CompositionInstance:
    graph: Multigraph
    c0_edges: tuple[EdgeId, EdgeId, EdgeId, EdgeId]
    e1: EdgeId
    k: int
    tile_spans: Mapping[int, frozenset[EdgeId]]
    corners: tuple[VertexId, VertexId, VertexId, VertexId]


def _composed(tiles: Sequence[Tile]) -> tuple[Tile, list[JoinMaps]]:
    joined, maps = join_seq_with_maps([invert_right(t) for t in tiles])
    return (joined if len(tiles) % 2 else invert_right(joined)), maps


def composed_tile(tiles: Sequence[Tile]) -> Tile:
    """Join of the right-inverted tiles, inverted once more when their number is even."""
    return _composed(tiles)[0]


def cross_compose(tiles: Sequence[Tile], k: int) -> CompositionInstance:
    """Glue the composed tile into a 4-cycle a1 a2 a3 a4 of weight k+1.

    The left wall becomes (a1, a2) and the right wall (a4, a3).
    """
    if not tiles:
        raise ConstructionError("need at least one tile")
    if k < 0:
        raise ConstructionError("k must be nonnegative")
    for i, t in enumerate(tiles):
        report = validate_diag_sep(t)
        if not report:
            raise ConstructionError(f"tile {i} is not diagonally separated: {report.first}")
    u, maps = _composed(tiles)
    (l1, l2), (r1, r2) = u.lwall, u.rwall
    walls = {l1, l2, r1, r2}
    taken = set(u.graph.vertices) - walls
    corners = []
    for base in ("a1", "a2", "a3", "a4"):
        name = fresh_name(base, taken)
        taken.add(name)
        corners.append(name)
    a1, a2, a3, a4 = corners
    g = u.graph.relabel({l1: a1, l2: a2, r1: a4, r2: a3})
    nid = g.next_edge_id()
    cycle = [Edge(nid + i, p, q, k + 1) for i, (p, q) in enumerate(((a1, a2), (a2, a3), (a3, a4), (a4, a1)))]
    g = Multigraph(g.vertices, g.edges + tuple(cycle))
    first = set(maps[0].edge.values())
    at_a1 = [e for e in g.incident(a1) if e in first]
    if len(at_a1) != 1:
        raise ConstructionError(f"first tile has {len(at_a1)} edges at a1, expected one")
    spans = {i: frozenset(m.edge.values()) for i, m in enumerate(maps)}
    return CompositionInstance(g, tuple(e.id for e in cycle), at_a1[0], k, spans, tuple(corners))


def cross_compose_instances(instances: Sequence[tuple[Tile, int]]) -> CompositionInstance:
    """Compose (tile, k) instances, which must all share one k."""
    ks = {k for _, k in instances}
    if len(ks) != 1:
        raise ConstructionError(f"mixed budgets {sorted(ks)}: instances are not equivalent")
    return cross_compose([t for t, _ in instances], ks.pop())


# -- fixtures ---------------------------------------------------------------


def ag1() -> AnchoredGraph:
    """Two chords p-q and r-s whose ends interleave on the disc boundary."""
    g = Multigraph.from_edges([("p", "q"), ("r", "s")])
    return AnchoredGraph(g, ("p", "r", "q", "s"))


def ag1_separated() -> AnchoredGraph:
    """Same two chords, not interleaved."""
    g = Multigraph.from_edges([("p", "q"), ("r", "s")])
    return AnchoredGraph(g, ("p", "q", "r", "s"))


def ag2() -> AnchoredGraph:
    """Chord p-q with path r1-r2-r3 whose middle anchor sits alone on one side."""
    g = Multigraph.from_edges([("p", "q"), ("r1", "r2"), ("r2", "r3")])
    return AnchoredGraph(g, ("p", "r2", "q", "r3", "r1"))


# -- generators -------------------------------------------------------------


def _rng(*parts: object) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def _random_tree(rng: random.Random, names: list[VertexId]) -> list[tuple[VertexId, VertexId]]:
    order = names[:]
    rng.shuffle(order)
    return [(order[i], rng.choice(order[:i])) for i in range(1, len(order))]


def _planar_component(
    rng: random.Random, prefix: str, anchors: int, inner: int
) -> tuple[list[tuple[VertexId, VertexId]], list[VertexId], list[VertexId]]:
    """A connected component with a cyclic anchor order it can be drawn with."""
    a_names = [f"{prefix}{i}" for i in range(anchors)]
    names = a_names + [f"{prefix}i{i}" for i in range(inner)]
    edges = _random_tree(rng, names)
    if len(names) >= 3 and rng.random() < 0.5:
        u, v = rng.sample(names, 2)
        if (u, v) not in edges and (v, u) not in edges:
            edges.append((u, v))
    g = Multigraph.from_edges(edges, names)
    for _ in range(40):
        order = a_names[:]
        rng.shuffle(order)
        if is_anchored_planar(AnchoredGraph(g, order)):
            return edges, names, order
    tree = edges[: len(names) - 1]
    return tree, names, _preorder(tree, names[0], set(a_names))


def _preorder(edges: list[tuple[VertexId, VertexId]], root: VertexId, keep: set[VertexId]) -> list[VertexId]:
    adj: dict[VertexId, list[VertexId]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out, seen, stack = [], {root}, [root]
    while stack:
        x = stack.pop()
        if x in keep:
            out.append(x)
        for y in sorted(adj.get(x, []), reverse=True):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return out


def gen_anchored_pair(
    seed: int, size1: int = 2, size2: int = 2, inner1: int | None = None, inner2: int | None = None
) -> AnchoredGraph:
    """Two disjoint connected anchored-planar components with randomly interleaved anchors.

    ``size1``/``size2`` are anchor counts; ``inner*`` default to 0 or 1 extra vertices.
    """
    if size1 < 1 or size2 < 1:
        raise ConstructionError("each component needs at least one anchor")
    rng = _rng("anchored", seed, size1, size2, inner1, inner2)
    if inner1 is None:
        inner1 = rng.randint(0, 1)
    if inner2 is None:
        inner2 = rng.randint(0, 1)
    e1, n1, o1 = _planar_component(rng, "p", size1, inner1)
    e2, n2, o2 = _planar_component(rng, "q", size2, inner2)
    r1 = rng.randrange(len(o1))
    r2 = rng.randrange(len(o2))
    o1, o2 = o1[r1:] + o1[:r1], o2[r2:] + o2[:r2]
    slots = [0] * len(o1) + [1] * len(o2)
    rng.shuffle(slots)
    it = [iter(o1), iter(o2)]
    sigma = [next(it[s]) for s in slots]
    g = Multigraph.from_edges(e1 + e2, n1 + n2)
    return AnchoredGraph(g, sigma)


def gen_diag_sep_tile(seed: int, size1: int = 1, size2: int = 1, **kw: int | None) -> Tile:
    return anchored_to_tile(gen_anchored_pair(seed, size1, size2, **kw))[0]


def gen_multigraph(
    seed: int, n: int = 6, m: int = 9, wmax: int = 1, tag: str = "graph", parallel: float = 0.15
) -> Multigraph:
    """Random multigraph on ``n`` vertices with ``m`` edges and weights in 1..wmax.

    Each edge repeats an earlier vertex pair with probability ``parallel``,
    otherwise it takes a fresh pair while any is left.
    """
    if n < 2:
        raise ConstructionError("need at least two vertices")
    rng = _rng(tag, seed, n, m, wmax, parallel)
    names = [f"v{i}" for i in range(n)]
    fresh = [(u, v) for i, u in enumerate(names) for v in names[i + 1:]]
    rng.shuffle(fresh)
    used: list[tuple[VertexId, VertexId]] = []
    edges = []
    for _ in range(m):
        if used and (not fresh or rng.random() < parallel):
            u, v = rng.choice(used)
        else:
            u, v = fresh.pop()
            used.append((u, v))
        edges.append((u, v, rng.randint(1, wmax)))
    return Multigraph.from_edges(edges, names)


def gen_tile(seed: int, n: int = 6, m: int = 8, wmax: int = 1, width: int = 2) -> Tile:
    """Random tile: a random multigraph with two disjoint random walls of ``width`` vertices."""
    if 2 * width > n:
        raise ConstructionError("walls do not fit in the vertex set")
    g = gen_multigraph(seed, n, m, wmax, tag="tile")
    rng = _rng("walls", seed, n, m, width)
    picked = rng.sample(list(g.vertices), 2 * width)
    return Tile(g, tuple(picked[:width]), tuple(picked[width:]))


def gen_twisted_planar_tile(seed: int, n: int = 6, m: int = 7, width: int = 2) -> Tile:
    """A tile T with tcr(T^↕) = 0: a planar random tile with its right wall reversed."""
    rng = _rng("twisted", seed, n, m, width)
    t = gen_tile(rng.randrange(2**32), n, m, 1, width)
    g = t.graph
    # Drop edges in random order until the tile is planar.
    ids = list(g.edge_ids)
    rng.shuffle(ids)
    while not is_tile_planar(t):
        g = g.without_edges([ids.pop()])
        t = t.with_graph(g)
    return invert_right(t)


def bounded_k(t: Tile, k: int) -> int:
    """Reject budgets above |E(T)|^2, the polynomial bound used for compositions."""
    cap = len(t.graph.edges) ** 2
    if k > cap:
        raise ConstructionError(f"k={k} exceeds |E(T)|^2 = {cap}")
    return k
