"""Planarity testing and the frame gadgets for tiles and anchored graphs.

A tile (or anchored graph) is drawn without crossings exactly when the graph
plus a frame cycle through its wall (anchor) vertices, plus an apex joined to
every frame vertex, is planar: the apex wheel forces the frame cycle to bound
a face, and that face plays the role of the unit square (disc).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Hashable, Iterable, Sequence

import networkx as nx

from .graph import AnchoredGraph, Edge, EdgeId, GraphError, Multigraph, VertexId

if TYPE_CHECKING:
    from .tiles import Tile


def _simple_adjacency(pairs: Iterable[tuple[Hashable, Hashable]]) -> dict[Hashable, set[Hashable]]:
    adj: dict[Hashable, set[Hashable]] = {}
    for u, v in pairs:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _reduce_low_degree(adj: dict[Hashable, set[Hashable]]) -> None:
    # Deleting degree <= 1 vertices and smoothing degree-2 vertices preserves planarity.
    stack = [v for v, nb in adj.items() if len(nb) <= 2]
    while stack:
        v = stack.pop()
        nb = adj.get(v)
        if nb is None or len(nb) > 2:
            continue
        del adj[v]
        for a in nb:
            adj[a].discard(v)
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        for a in nb:
            if len(adj[a]) <= 2:
                stack.append(a)


def planar_pairs(pairs: Iterable[tuple[Hashable, Hashable]]) -> bool:
    """Planarity of the simple graph underlying an edge list (loops ignored)."""
    adj = _simple_adjacency(pairs)
    _reduce_low_degree(adj)
    n = len(adj)
    if n < 5:
        return True
    m = sum(len(nb) for nb in adj.values()) // 2
    if m > 3 * n - 6:
        return False
    h = nx.Graph()
    for u, nb in adj.items():
        for v in nb:
            h.add_edge(u, v)
    return nx.check_planarity(h)[0]


def is_planar(g: Multigraph) -> bool:
    """True iff ``g`` has a crossing-free drawing; weights and multiplicities are ignored."""
    return planar_pairs((e.u, e.v) for e in g.edges)


def euler_lower_bound(pairs: Iterable[tuple[Hashable, Hashable]]) -> int:
    """Crossings forced by edge counting on the underlying simple graph.

    Uses |E| <= 3|V| - 6, or |E| <= 2|V| - 4 when the graph has no triangle.
    Every crossing can be destroyed by deleting one edge, so the excess over
    the planar bound is a lower bound on the crossing number.
    """
    adj = _simple_adjacency(pairs)
    n = len(adj)
    if n < 3:
        return 0
    m = sum(len(nb) for nb in adj.values()) // 2
    bound = 3 * n - 6 if _has_triangle(adj) else 2 * n - 4
    return max(0, m - bound)


def _has_triangle(adj: dict[Hashable, set[Hashable]]) -> bool:
    return any(adj[u] & adj[v] for u in adj for v in adj[u])


@dataclass(frozen=True)
class FrameResult:
    framed_graph: Multigraph
    frame_edges: frozenset[EdgeId]
    apex: VertexId
    cycle: tuple[VertexId, ...]

    def strip(self) -> Multigraph:
        """Remove the apex and frame edges again."""
        return self.framed_graph.without_edges(self.frame_edges).without_vertices([self.apex])


def _frame(g: Multigraph, cycle: Sequence[VertexId]) -> FrameResult:
    apex = g.fresh_vertex("apex")
    nid = g.next_edge_id()
    added: list[Edge] = []
    c = list(cycle)
    if len(c) == 2:
        added.append(Edge(nid, c[0], c[1]))
    elif len(c) >= 3:
        for i, v in enumerate(c):
            added.append(Edge(nid + len(added), v, c[(i + 1) % len(c)]))
    for v in c:
        added.append(Edge(nid + len(added), apex, v))
    framed = Multigraph(g.vertices + (apex,), g.edges + tuple(added))
    return FrameResult(framed, frozenset(e.id for e in added), apex, tuple(c))


def tile_frame_cycle(lwall: Sequence[VertexId], rwall: Sequence[VertexId]) -> tuple[VertexId, ...]:
    """Boundary order of a tile's square: left wall bottom-to-top, then right wall top-to-bottom."""
    return tuple(lwall) + tuple(reversed(rwall))


def frame_tile(t: Tile) -> FrameResult:
    if not t.lwall or not t.rwall:
        raise GraphError("tile walls must be nonempty to frame")
    if set(t.lwall) & set(t.rwall):
        raise GraphError("tile walls intersect")
    for v in t.lwall + t.rwall:
        if v not in t.graph.vertices:
            raise GraphError(f"wall vertex {v!r} missing from graph")
    return _frame(t.graph, tile_frame_cycle(t.lwall, t.rwall))


def frame_anchored(a: AnchoredGraph) -> FrameResult:
    return _frame(a.graph, a.sigma)


def is_tile_planar(t: Tile) -> bool:
    return is_planar(frame_tile(t).framed_graph)


def is_anchored_planar(a: AnchoredGraph) -> bool:
    return is_planar(frame_anchored(a).framed_graph)
