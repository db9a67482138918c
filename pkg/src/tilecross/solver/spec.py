"""Crossing specifications, planarizations and solver results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from ..graph import AnchoredGraph, Edge, EdgeId, GraphError, Multigraph, VertexId, fresh_name
from ..tiles import Tile
from ..topology import FrameResult, frame_anchored, frame_tile

Instance = Multigraph | Tile | AnchoredGraph


class SpecError(GraphError):
    """A crossing specification that no good drawing can realize as written."""


class TimeLimitExceeded(RuntimeError):
    """The search ran past its time budget without reaching a verdict."""


Pair = tuple[EdgeId, EdgeId]


@dataclass(frozen=True)
class CrossingSpec:
    """Which edge pairs cross, and in what order along each crossed edge.

    ``orders[e]`` lists the partners of ``e`` in the order its crossings are
    met when walking from ``e.u`` to ``e.v``.
    """

    pairs: tuple[Pair, ...] = ()
    orders: tuple[tuple[EdgeId, tuple[EdgeId, ...]], ...] = ()

    @classmethod
    def build(
        cls,
        pairs: Iterable[tuple[EdgeId, EdgeId]],
        orders: Mapping[EdgeId, Iterable[EdgeId]] | None = None,
    ) -> CrossingSpec:
        """Normalize pairs to ``e < f``; missing orders default to ascending partner id."""
        norm = [(min(e, f), max(e, f)) for e, f in pairs]
        partners: dict[EdgeId, list[EdgeId]] = {}
        for e, f in norm:
            partners.setdefault(e, []).append(f)
            partners.setdefault(f, []).append(e)
        given = {k: tuple(v) for k, v in (orders or {}).items()}
        out = {e: given.get(e, tuple(sorted(ps))) for e, ps in partners.items()}
        for e in given:
            out.setdefault(e, given[e])
        return cls(tuple(sorted(norm)), tuple(sorted(out.items())))

    @property
    def order_map(self) -> dict[EdgeId, tuple[EdgeId, ...]]:
        return dict(self.orders)

    def order(self, e: EdgeId) -> tuple[EdgeId, ...]:
        return self.order_map.get(e, ())

    def crossed_edges(self) -> tuple[EdgeId, ...]:
        return tuple(e for e, _ in self.orders)

    def __len__(self) -> int:
        return len(self.pairs)

    def cost(self, g: Multigraph) -> int:
        return sum(g.weight(e) * g.weight(f) for e, f in self.pairs)

    def validate(self, g: Multigraph) -> None:
        """Raise :class:`SpecError` unless the spec is well formed against ``g``."""
        seen: set[Pair] = set()
        partners: dict[EdgeId, set[EdgeId]] = {}
        for e, f in self.pairs:
            for x in (e, f):
                if not g.has_edge(x):
                    raise SpecError(f"unknown edge {x} in crossing ({e}, {f})")
            if e == f:
                raise SpecError(f"edge {e} crosses itself")
            if not g.independent(e, f):
                raise SpecError(f"adjacent edges {e} and {f} cannot cross")
            if (e, f) in seen:
                raise SpecError(f"pair ({e}, {f}) crosses more than once")
            seen.add((e, f))
            partners.setdefault(e, set()).add(f)
            partners.setdefault(f, set()).add(e)
        orders = self.order_map
        for e, ps in partners.items():
            got = orders.get(e)
            if got is None or len(got) != len(ps) or set(got) != ps:
                raise SpecError(f"order along edge {e} does not match its crossings")
        for e in orders:
            if e not in partners and orders[e]:
                raise SpecError(f"order given for edge {e} which has no crossings")


@dataclass(frozen=True)
class Planarization:
    derived: Multigraph
    dummy_map: Mapping[Pair, VertexId]
    segments: Mapping[EdgeId, tuple[EdgeId, ...]]
    source: CrossingSpec

    @property
    def dummies(self) -> frozenset[VertexId]:
        return frozenset(self.dummy_map.values())


def apply_planarization(g: Multigraph, spec: CrossingSpec) -> Planarization:
    """Replace every crossing by a fresh degree-4 vertex.

    Uncrossed edges keep their ids; a crossed edge is replaced by a chain of
    segments with fresh ids, listed from ``u`` to ``v``, each carrying the
    edge's weight.
    """
    spec.validate(g)
    taken = set(g.vertices)
    dummy: dict[Pair, VertexId] = {}
    for e, f in spec.pairs:
        name = fresh_name(f"d{e}_{f}", taken)
        taken.add(name)
        dummy[(e, f)] = name
    orders = spec.order_map
    nid = g.next_edge_id()
    edges: list[Edge] = []
    segments: dict[EdgeId, tuple[EdgeId, ...]] = {}
    for e in g.edges:
        seq = orders.get(e.id, ())
        if not seq:
            edges.append(e)
            segments[e.id] = (e.id,)
            continue
        stops = [e.u] + [dummy[(min(e.id, f), max(e.id, f))] for f in seq] + [e.v]
        ids = []
        for a, b in zip(stops, stops[1:]):
            edges.append(Edge(nid, a, b, e.weight))
            ids.append(nid)
            nid += 1
        segments[e.id] = tuple(ids)
    return Planarization(Multigraph(taken, edges), dummy, segments, spec)


def base_graph(instance: Instance) -> Multigraph:
    if isinstance(instance, Multigraph):
        return instance
    return instance.graph


def frame_instance(instance: Instance, graph: Multigraph | None = None) -> FrameResult | None:
    """Frame gadget for ``instance`` (optionally with its graph swapped out), None in plane mode."""
    if isinstance(instance, Multigraph):
        return None
    g = instance.graph if graph is None else graph
    if isinstance(instance, Tile):
        return frame_tile(Tile(g, instance.lwall, instance.rwall))
    return frame_anchored(AnchoredGraph(g, instance.sigma))


def mode_name(instance: Instance) -> str:
    if isinstance(instance, Tile):
        return "tile"
    if isinstance(instance, AnchoredGraph):
        return "anchored"
    return "plane"


def verify_witness(instance: Instance, spec: CrossingSpec) -> bool:
    """Check a witness from scratch: planarize, frame if needed, test planarity.

    This deliberately avoids the search's own fast planarity filter.
    """
    g = base_graph(instance)
    try:
        p = apply_planarization(g, spec)
    except SpecError:
        return False
    framed = frame_instance(instance, p.derived)
    h = (framed.framed_graph if framed is not None else p.derived)
    nxg = nx.Graph()
    nxg.add_nodes_from(h.vertices)
    nxg.add_edges_from((e.u, e.v) for e in h.edges)
    return nx.check_planarity(nxg)[0]


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a budgeted search: ``value`` is None when it exceeds ``budget``."""

    value: int | None
    witness: CrossingSpec | None
    budget: int
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.value is not None

    def decide(self, k: int) -> bool:
        """Whether cost <= k is achievable; valid for every ``k <= budget``."""
        if k > self.budget:
            raise ValueError(f"k={k} is beyond the searched budget {self.budget}")
        return self.value is not None and self.value <= k
