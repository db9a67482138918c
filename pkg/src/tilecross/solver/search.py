"""Exact crossing minimization by enumerating good-drawing planarizations.

The instance is framed first (tile and anchored modes), so every mode
becomes "make this graph planar by crossing only the original edges". The
framed graph is split into blocks, which can be drawn independently and
glued at cut vertices, so the optimum is the sum of the per-block optima.

Each block is searched by iterative deepening on the target cost. At a
given target, crossing sets are enumerated as increasing index sequences
over the block's candidate pairs (independent crossable pairs, sorted by
edge ids), and for every set each edge with two or more crossings tries all
orders of its crossings, in lexicographic order. The first planar
planarization is the block's witness, so results are reproducible and do
not depend on the worker count.
"""

from __future__ import annotations

import math
import os
import time
from itertools import permutations, product
from multiprocessing import get_context
from multiprocessing.connection import wait
from typing import Hashable

import networkx as nx

from ..graph import AnchoredGraph, EdgeId, Multigraph, VertexId
from ..tiles import Tile
from ..topology import euler_lower_bound, planar_pairs
from .spec import (
    CrossingSpec,
    Instance,
    Pair,
    SolveResult,
    TimeLimitExceeded,
    base_graph,
    frame_instance,
    verify_witness,
)

TIME_LIMIT_ENV = "TILECROSS_TIME_LIMIT_SECS"
THREADS_ENV = "TILECROSS_THREADS"
CHECK_EVERY = 256


class SolverError(RuntimeError):
    """Internal inconsistency, e.g. a witness that fails re-verification."""


def time_limit_from_env() -> float | None:
    raw = os.environ.get(TIME_LIMIT_ENV, "").strip()
    if not raw:
        return None
    secs = float(raw)
    if secs <= 0:
        raise ValueError(f"{TIME_LIMIT_ENV} must be positive, got {raw!r}")
    return secs


def threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    n = int(raw) if raw else 0
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be >= 0, got {raw!r}")
    return n


class _Block:
    """Search state for one block of the framed graph."""

    def __init__(self, ends: dict[EdgeId, tuple[VertexId, VertexId]], crossable: dict[EdgeId, int], deadline: float | None):
        self.ends = ends
        self.deadline = deadline
        ids = sorted(crossable)
        cand: list[tuple[EdgeId, EdgeId, int]] = []
        for i, e in enumerate(ids):
            for f in ids[i + 1:]:
                if not set(ends[e]) & set(ends[f]):
                    cand.append((e, f, crossable[e] * crossable[f]))
        self.cand = cand
        self.min_cost = min((c for _, _, c in cand), default=0)
        self.lb_count = euler_lower_bound(ends.values())
        self.nodes = 0

    def lower_bound(self) -> float:
        if planar_pairs(self.ends.values()):
            return 0
        if not self.cand:
            return math.inf
        return max(self.lb_count, 1) * self.min_cost

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % CHECK_EVERY == 0 and time.time() > self.deadline:
            raise TimeLimitExceeded("time limit exceeded")

    def _planar(self, orders: dict[EdgeId, tuple[EdgeId, ...]]) -> bool:
        self._tick()
        pairs: list[tuple[Hashable, Hashable]] = []
        for e, (u, v) in self.ends.items():
            seq = orders.get(e)
            if not seq:
                pairs.append((u, v))
                continue
            stops = [u] + [("d", min(e, f), max(e, f)) for f in seq] + [v]
            pairs.extend(zip(stops, stops[1:]))
        return planar_pairs(pairs)

    def _try(self, chosen: list[int]) -> CrossingSpec | None:
        partners: dict[EdgeId, list[EdgeId]] = {}
        for j in chosen:
            e, f, _ = self.cand[j]
            partners.setdefault(e, []).append(f)
            partners.setdefault(f, []).append(e)
        multi = sorted(e for e, ps in partners.items() if len(ps) > 1)
        fixed = {e: tuple(ps) for e, ps in partners.items() if len(ps) == 1}
        choices = [permutations(sorted(partners[e])) for e in multi]
        for combo in product(*choices):
            orders = dict(fixed)
            orders.update(zip(multi, combo))
            if self._planar(orders):
                return CrossingSpec.build(
                    ((self.cand[j][0], self.cand[j][1]) for j in chosen), orders
                )
        return None

    def search_from(self, target: int, first: int) -> CrossingSpec | None:
        """First witness of cost exactly ``target`` whose least pair index is ``first``."""
        c = self.cand[first][2]
        if c > target:
            return None
        return self._dfs([first], first + 1, target - c)

    def _dfs(self, chosen: list[int], start: int, rem: int) -> CrossingSpec | None:
        if rem == 0:
            if len(chosen) < self.lb_count:
                return None
            return self._try(chosen)
        if len(chosen) + rem // self.min_cost < self.lb_count:
            return None
        for j in range(start, len(self.cand)):
            c = self.cand[j][2]
            if c > rem:
                continue
            chosen.append(j)
            found = self._dfs(chosen, j + 1, rem - c)
            chosen.pop()
            if found is not None:
                return found
        return None


def _worker(blk: _Block, target: int, step: int, n: int, tasks, results) -> None:
    # forked child: blk is inherited, only chunk ids and results cross the pipe
    while (chunk := tasks.get()) is not None:
        blk.nodes = 0
        found = None
        try:
            for first in range(chunk * step, min(chunk * step + step, n)):
                found = blk.search_from(target, first)
                if found is not None:
                    break
        except BaseException as exc:  # noqa: BLE001 - handed to the parent
            results.put((chunk, exc, blk.nodes))
            return
        results.put((chunk, found, blk.nodes))


def _search_level(blk: _Block, target: int, threads: int) -> CrossingSpec | None:
    if target == 0:
        return CrossingSpec() if blk._planar({}) else None
    n = len(blk.cand)
    if threads <= 0 or n < 2:
        for first in range(n):
            found = blk.search_from(target, first)
            if found is not None:
                return found
        return None
    # contiguous chunks consumed in order keep the sequential witness; the
    # workers are killed on the first hit instead of draining later chunks
    step = max(1, n // (threads * 8))
    chunks = -(-n // step)
    ctx = get_context("fork")
    tasks, results = ctx.SimpleQueue(), ctx.SimpleQueue()
    for c in range(chunks):
        tasks.put(c)
    for _ in range(threads):
        tasks.put(None)
    procs = [ctx.Process(target=_worker, args=(blk, target, step, n, tasks, results), daemon=True) for _ in range(threads)]
    for p in procs:
        p.start()
    done: dict[int, object] = {}
    try:
        for want in range(chunks):
            while want not in done:
                if not wait([results._reader], 0.5):
                    if not any(p.is_alive() for p in procs) and results.empty():
                        raise SolverError("search worker exited without a result")
                    continue
                chunk, found, nodes = results.get()
                blk.nodes += nodes
                done[chunk] = found
            found = done.pop(want)
            if isinstance(found, BaseException):
                raise found
            if found is not None:
                return found
        return None
    finally:
        for p in procs:
            if p.is_alive():
                p.kill()
        for p in procs:
            p.join()
        tasks.close()
        results.close()


def _solve_block(blk: _Block, budget: int, threads: int) -> CrossingSpec | None:
    lb = blk.lower_bound()
    if lb > budget:
        return None
    for target in range(int(lb), budget + 1):
        if target > 0 and not blk.cand:
            return None
        found = _search_level(blk, target, threads)
        if found is not None:
            return found
    return None


def _blocks(instance: Instance, deadline: float | None) -> list[_Block]:
    g = base_graph(instance)
    framed = frame_instance(instance)
    h = framed.framed_graph if framed is not None else g
    frame_ids = framed.frame_edges if framed is not None else frozenset()
    simple = nx.Graph()
    simple.add_edges_from((e.u, e.v) for e in h.edges)
    where: dict[frozenset, int] = {}
    comps = [c for c in nx.biconnected_components(simple) if len(c) > 1]
    comps.sort(key=lambda c: min(c))
    for i, comp in enumerate(comps):
        vs = sorted(comp)
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                if simple.has_edge(vs[a], vs[b]):
                    where[frozenset((vs[a], vs[b]))] = i
    grouped: list[tuple[dict, dict]] = [({}, {}) for _ in comps]
    for e in h.edges:
        ends, crossable = grouped[where[e.ends]]
        ends[e.id] = (e.u, e.v)
        if e.id not in frame_ids:
            crossable[e.id] = e.weight
    return [_Block(ends, crossable, deadline) for ends, crossable in grouped if crossable]


def solve(instance: Instance, budget: int, *, threads: int | None = None, time_limit: float | None = None) -> SolveResult:
    """Least weighted crossing cost of ``instance`` if it is at most ``budget``.

    The mode follows the instance type: a bare graph is drawn in the plane, a
    tile in the unit square with its walls, an anchored graph in a disc with
    anchors on the boundary in cyclic order.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    g = base_graph(instance)
    g.check_size()
    if threads is None:
        threads = threads_from_env()
    if time_limit is None:
        time_limit = time_limit_from_env()
    t0 = time.time()
    deadline = None if time_limit is None else t0 + time_limit
    blocks = _blocks(instance, deadline)
    # Each block gets the budget left after every other block's lower bound.
    lbs = [b.lower_bound() for b in blocks]
    if sum(lbs) > budget:
        return SolveResult(None, None, budget, 0, time.time() - t0)
    spent = 0
    reserved = sum(lbs)
    pairs: list[Pair] = []
    orders: dict[EdgeId, tuple[EdgeId, ...]] = {}
    nodes = 0
    for blk, lb in zip(blocks, lbs):
        reserved -= lb
        found = _solve_block(blk, budget - spent - reserved, threads)
        nodes += blk.nodes
        if found is None:
            return SolveResult(None, None, budget, nodes, time.time() - t0)
        spent += found.cost(g)
        pairs.extend(found.pairs)
        orders.update(found.order_map)
    witness = CrossingSpec.build(pairs, orders)
    if witness.cost(g) != spent or not verify_witness(instance, witness):
        raise SolverError("witness failed independent re-verification")
    return SolveResult(spent, witness, budget, nodes, time.time() - t0)


def decide_cr(instance: Instance, k: int, **kw) -> SolveResult:
    """Decide whether a drawing of cost at most ``k`` exists; the result carries the optimum."""
    return solve(instance, k, **kw)


def crossing_number(g: Multigraph, budget: int, **kw) -> SolveResult:
    if not isinstance(g, Multigraph):
        raise TypeError("crossing_number expects a Multigraph")
    return solve(g, budget, **kw)


def tile_crossing_number(t: Tile, budget: int, **kw) -> SolveResult:
    if not isinstance(t, Tile):
        raise TypeError("tile_crossing_number expects a Tile")
    return solve(t, budget, **kw)


def anchored_crossing_number(a: AnchoredGraph, budget: int, **kw) -> SolveResult:
    if not isinstance(a, AnchoredGraph):
        raise TypeError("anchored_crossing_number expects an AnchoredGraph")
    return solve(a, budget, **kw)
