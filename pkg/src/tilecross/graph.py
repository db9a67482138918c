"""Integer-weighted multigraphs and anchored graphs.

Vertices are printable string tokens, edges carry integer ids. Everything
here is immutable; operations that change a graph return a new one.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

VertexId = str
EdgeId = int

MAX_VERTICES = 64
MAX_EDGES = 256
MAX_WEIGHT = 2**31 - 1


class GraphError(ValueError):
    """Raised when a graph, tile or anchored graph violates an invariant."""


class SizeCapError(GraphError):
    """Instance is larger than the desk-scale hard caps."""


@dataclass(frozen=True, order=True)
class Edge:
    id: EdgeId
    u: VertexId
    v: VertexId
    weight: int = 1

    def other(self, x: VertexId) -> VertexId:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x!r} is not an end of edge {self.id}")

    @property
    def ends(self) -> frozenset[VertexId]:
        return frozenset((self.u, self.v))


class Multigraph:
    """Undirected multigraph with positive integer edge weights.

    Parallel edges are allowed and each has its own id; self-loops are not.
    Iteration order is always sorted (vertices by name, edges by id).
    """

    __slots__ = ("_vertices", "_edges", "_by_id", "_incident")

    def __init__(self, vertices: Iterable[VertexId] = (), edges: Iterable[Edge] = ()) -> None:
        vset = set(vertices)
        for v in vset:
            if not isinstance(v, str) or not v or any(c.isspace() for c in v):
                raise GraphError(f"vertex id must be a non-empty token, got {v!r}")
        by_id: dict[EdgeId, Edge] = {}
        for e in edges:
            if e.id in by_id:
                raise GraphError(f"duplicate edge id {e.id}")
            if e.u == e.v:
                raise GraphError(f"self-loop at {e.u!r} (edge {e.id})")
            if e.u not in vset or e.v not in vset:
                raise GraphError(f"edge {e.id} has an endpoint outside the vertex set")
            if not isinstance(e.weight, int) or e.weight < 1:
                raise GraphError(f"edge {e.id} weight must be a positive integer")
            if e.weight > MAX_WEIGHT:
                raise GraphError(f"edge {e.id} weight {e.weight} overflows the weight bound")
            by_id[e.id] = e
        self._vertices = tuple(sorted(vset))
        self._edges = tuple(by_id[i] for i in sorted(by_id))
        self._by_id = by_id
        incident: dict[VertexId, list[EdgeId]] = {v: [] for v in self._vertices}
        for e in self._edges:
            incident[e.u].append(e.id)
            incident[e.v].append(e.id)
        self._incident = {v: tuple(ids) for v, ids in incident.items()}

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[VertexId, VertexId] | tuple[VertexId, VertexId, int]],
        vertices: Iterable[VertexId] = (),
    ) -> Multigraph:
        """Build a graph from ``(u, v)`` or ``(u, v, w)`` tuples; ids follow input order."""
        vs = set(vertices)
        out = []
        for i, item in enumerate(edges):
            u, v = item[0], item[1]
            w = item[2] if len(item) > 2 else 1
            vs.update((u, v))
            out.append(Edge(i, u, v, w))
        return cls(vs, out)

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e.id for e in self._edges)

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._by_id

    def weight(self, eid: EdgeId) -> int:
        return self.edge(eid).weight

    def incident(self, v: VertexId) -> tuple[EdgeId, ...]:
        return self._incident[v]

    def degree(self, v: VertexId) -> int:
        return len(self._incident[v])

    def neighbors(self, v: VertexId) -> set[VertexId]:
        return {self._by_id[e].other(v) for e in self._incident[v]}

    def total_weight(self) -> int:
        return sum(e.weight for e in self._edges)

    def next_edge_id(self) -> EdgeId:
        return self._edges[-1].id + 1 if self._edges else 0

    def fresh_vertex(self, base: str, taken: Iterable[VertexId] = ()) -> VertexId:
        return fresh_name(base, set(self._vertices).union(taken))

    def independent(self, e: EdgeId, f: EdgeId) -> bool:
        """True when ``e`` and ``f`` are distinct and share no endpoint."""
        return e != f and not (self.edge(e).ends & self.edge(f).ends)

    def without_edges(self, eids: Iterable[EdgeId]) -> Multigraph:
        drop = set(eids)
        for eid in drop:
            self.edge(eid)
        return Multigraph(self._vertices, (e for e in self._edges if e.id not in drop))

    def without_vertices(self, vs: Iterable[VertexId]) -> Multigraph:
        drop = set(vs)
        return Multigraph(
            (v for v in self._vertices if v not in drop),
            (e for e in self._edges if e.u not in drop and e.v not in drop),
        )

    def subgraph(self, vs: Iterable[VertexId]) -> Multigraph:
        keep = set(vs)
        return Multigraph(keep, (e for e in self._edges if e.u in keep and e.v in keep))

    def relabel(self, mapping: Mapping[VertexId, VertexId]) -> Multigraph:
        """Rename vertices (unmapped ones keep their name); the map must stay injective."""
        names = {v: mapping.get(v, v) for v in self._vertices}
        if len(set(names.values())) != len(names):
            raise GraphError("relabeling merges vertices")
        return Multigraph(
            names.values(),
            (Edge(e.id, names[e.u], names[e.v], e.weight) for e in self._edges),
        )

    def check_size(self, max_vertices: int = MAX_VERTICES, max_edges: int = MAX_EDGES) -> None:
        if len(self._vertices) > max_vertices or len(self._edges) > max_edges:
            raise SizeCapError(
                f"graph has {len(self._vertices)} vertices and {len(self._edges)} edges; "
                f"cap is {max_vertices} vertices / {max_edges} edges"
            )

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Multigraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def fresh_name(base: str, taken: set[VertexId]) -> VertexId:
    """``base`` if unused, otherwise ``base_1``, ``base_2``, ... (first free)."""
    if base not in taken:
        return base
    n = 1
    while f"{base}_{n}" in taken:
        n += 1
    return f"{base}_{n}"


@dataclass(frozen=True)
class ExpandResult:
    graph: Multigraph
    bunches: Mapping[EdgeId, tuple[EdgeId, ...]]


def expand_weights(g: Multigraph, f: Iterable[EdgeId] | None = None) -> ExpandResult:
    """Replace each edge of weight t in ``f`` by t parallel unit edges.

    ``f=None`` expands every edge. Edge ids are renumbered densely in the
    original id order, so a bunch keeps the sort position of its source edge.
    """
    chosen = set(g.edge_ids) if f is None else set(f)
    for eid in chosen:
        g.edge(eid)
    out: list[Edge] = []
    bunches: dict[EdgeId, tuple[EdgeId, ...]] = {}
    nid = 0
    for e in g.edges:
        copies = e.weight if e.id in chosen else 1
        w = 1 if e.id in chosen else e.weight
        ids = tuple(range(nid, nid + copies))
        out.extend(Edge(i, e.u, e.v, w) for i in ids)
        bunches[e.id] = ids
        nid += copies
    return ExpandResult(Multigraph(g.vertices, out), bunches)


def subdivide_edge(g: Multigraph, eid: EdgeId) -> Multigraph:
    """Split edge ``eid`` at a fresh vertex; both halves keep its weight."""
    e = g.edge(eid)
    mid = g.fresh_vertex(f"sub{eid}")
    nid = g.next_edge_id()
    edges = [x for x in g.edges if x.id != eid]
    edges += [Edge(nid, e.u, mid, e.weight), Edge(nid + 1, mid, e.v, e.weight)]
    return Multigraph(g.vertices + (mid,), edges)


def connected_components(g: Multigraph) -> list[frozenset[VertexId]]:
    """Vertex classes of ``g``, ordered by their least vertex."""
    adj: dict[VertexId, set[VertexId]] = defaultdict(set)
    for e in g.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen: set[VertexId] = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Multigraph) -> bool:
    return len(connected_components(g)) <= 1


def induced_weight(g: Multigraph, s: Iterable[VertexId]) -> int:
    """Total weight of edges with both ends in ``s``."""
    vs = set(s)
    return sum(e.weight for e in g.edges if e.u in vs and e.v in vs)


class AnchoredGraph:
    """A graph with anchor vertices pinned to a disc boundary in cyclic order.

    ``sigma`` is stored rotated so that it starts at its least anchor; two
    anchored graphs whose orders differ only by rotation compare equal.
    """

    __slots__ = ("graph", "sigma")

    def __init__(self, graph: Multigraph, sigma: Sequence[VertexId]) -> None:
        sigma = tuple(sigma)
        if not sigma:
            raise GraphError("anchored graph needs at least one anchor")
        if len(set(sigma)) != len(sigma):
            raise GraphError("sigma is not a permutation of the anchors: repeated anchor")
        for v in sigma:
            if v not in graph._incident:
                raise GraphError(f"anchor {v!r} is not a vertex of the graph")
        i = sigma.index(min(sigma))
        self.graph = graph
        self.sigma = sigma[i:] + sigma[:i]

    @property
    def anchors(self) -> frozenset[VertexId]:
        return frozenset(self.sigma)

    def restrict(self, vs: Iterable[VertexId]) -> AnchoredGraph:
        """The anchored subgraph induced on ``vs`` (sigma restricted)."""
        keep = set(vs)
        return AnchoredGraph(self.graph.subgraph(keep), [a for a in self.sigma if a in keep])

    def with_graph(self, graph: Multigraph) -> AnchoredGraph:
        return AnchoredGraph(graph, self.sigma)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnchoredGraph):
            return NotImplemented
        return self.graph == other.graph and self.sigma == other.sigma

    def __hash__(self) -> int:
        return hash((self.graph, self.sigma))

    def __repr__(self) -> str:
        return f"AnchoredGraph({self.graph!r}, sigma={self.sigma})"
