"""Brute-force crossing numbers, kept deliberately separate from the search.

Weights are expanded into parallel unit edges first, then every well-formed
crossing specification is tried in lexicographic order, smallest cost
first, with no pruning. Planarity of each (framed) planarization is
decided by the Boyer-Myrvold implementation in ``planarity``, not by the
networkx test the search relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

import planarity

from ..graph import EdgeId, Multigraph, expand_weights
from .spec import CrossingSpec, Instance, base_graph, frame_instance

MAX_VERTICES = 40
MAX_EXPANDED_EDGES = 256
MAX_BUDGET = 6
MAX_SPECS = 100_000


class OracleCapExceeded(RuntimeError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleResult:
    value: int | None
    witness: CrossingSpec | None
    budget: int
    specs_tested: int

    @property
    def feasible(self) -> bool:
        return self.value is not None


def _expanded_instance(instance: Instance) -> tuple[Multigraph, Instance]:
    ex = expand_weights(base_graph(instance)).graph
    if isinstance(instance, Multigraph):
        return ex, ex
    return ex, instance.with_graph(ex)


def oracle_crossing_number(instance: Instance, budget: int, *, max_specs: int = MAX_SPECS) -> OracleResult:
    """Least crossing count of the unit-weight expansion, or None beyond ``budget``.

    The witness refers to edge ids of the expanded graph.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if budget > MAX_BUDGET:
        raise OracleCapExceeded(f"budget {budget} above oracle cap {MAX_BUDGET}")
    g = base_graph(instance)
    if len(g.vertices) > MAX_VERTICES:
        raise OracleCapExceeded(f"{len(g.vertices)} vertices above oracle cap {MAX_VERTICES}")
    if g.total_weight() > MAX_EXPANDED_EDGES:
        raise OracleCapExceeded(f"expansion has {g.total_weight()} edges, cap is {MAX_EXPANDED_EDGES}")
    ex, inst = _expanded_instance(instance)
    framed = frame_instance(inst)
    host = framed.framed_graph if framed is not None else ex
    ends = {e.id: (e.u, e.v) for e in host.edges}
    ids = ex.edge_ids
    pairs = [(e, f) for e, f in combinations(ids, 2) if ex.independent(e, f)]
    seen: dict[frozenset, bool] = {}
    tested = 0

    # simple edge set of the uncrossed host, with multiplicities so that a
    # crossed edge only removes its key when no parallel copy is left
    mult: dict[frozenset, int] = {}
    for u, v in ends.values():
        k = frozenset((u, v))
        mult[k] = mult.get(k, 0) + 1
    base = frozenset(mult)

    def planar(orders: dict[EdgeId, tuple[EdgeId, ...]]) -> bool:
        gone: dict[frozenset, int] = {}
        added: set[frozenset] = set()
        for e, seq in orders.items():
            u, v = ends[e]
            k = frozenset((u, v))
            gone[k] = gone.get(k, 0) + 1
            stops = [u] + [("x", min(e, f), max(e, f)) for f in seq] + [v]
            added.update(frozenset(ab) for ab in zip(stops, stops[1:]))
        drop = {k for k, n in gone.items() if n == mult[k]}
        key = (base - drop) | added
        if key not in seen:
            seen[key] = planarity.is_planar([tuple(k) for k in key])
        return seen[key]

    for cost in range(budget + 1):
        for chosen in combinations(pairs, cost):
            partners: dict[EdgeId, list[EdgeId]] = {}
            for e, f in chosen:
                partners.setdefault(e, []).append(f)
                partners.setdefault(f, []).append(e)
            edges = sorted(partners)
            for combo in product(*(permutations(sorted(partners[e])) for e in edges)):
                tested += 1
                if tested > max_specs:
                    raise OracleCapExceeded(f"more than {max_specs} specifications")
                orders = dict(zip(edges, combo))
                if planar(orders):
                    spec = CrossingSpec.build(chosen, orders)
                    spec.validate(ex)
                    return OracleResult(cost, spec, budget, tested)
    return OracleResult(None, None, budget, tested)
