"""Seeded machine checks of the constructive claims, solver and oracle side by side.

Each check yields a :class:`Report` whose verdict is ``pass`` only when the
claimed (in)equality holds for the solver values and every oracle value
agrees with its solver counterpart. Instances outside the oracle's reach, or
failing a claim's precondition, are ``inapplicable`` rather than failures.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .constructions import (
    ConstructionError,
    ag1,
    anchored_to_tile,
    composed_tile,
    cross_compose,
    gen_anchored_pair,
    gen_diag_sep_tile,
    gen_multigraph,
    gen_tile,
    gen_twisted_planar_tile,
)
from .graph import AnchoredGraph, Multigraph, expand_weights
from .solver import OracleCapExceeded, oracle_crossing_number, solve
from .solver.spec import Instance
from .tiles import Tile, cross_tile, invert_right, join_seq, tmin, validate_diag_sep

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"
CLAIMS = ("prop23", "ex22", "lemma42", "cor43", "lemma51")


@dataclass(frozen=True)
class Report:
    id: str
    claim: str
    lhs: object
    rhs: object
    verdict: str
    solver: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    note: str = ""
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class _Oracle:
    """Runs oracle calls, remembering whether any hit a cap."""

    def __init__(self) -> None:
        self.capped: str | None = None

    def __call__(self, inst: Instance, budget: int) -> int | None:
        # one cap already makes the report inapplicable
        if self.capped is not None:
            return None
        try:
            return oracle_crossing_number(inst, budget).value
        except OracleCapExceeded as exc:
            self.capped = str(exc)
            return None


def _value(inst: Instance, budget: int) -> int | None:
    return solve(inst, budget).value


def _agree(solver: dict, oracle: dict) -> bool:
    return all(solver[k] == oracle[k] for k in oracle)


def _at_most(a: int | None, b: int | None) -> bool | None:
    """a <= b where None means "above the budget"; None when both are."""
    if a is None:
        return None if b is None else False
    return True if b is None else a <= b


def _finish(rid, claim, lhs, rhs, holds, solver, oracle, orc: _Oracle, seed, note="") -> Report:
    if orc.capped is not None:
        return Report(rid, claim, lhs, rhs, INAPPLICABLE, solver, {}, f"oracle cap: {orc.capped}", seed)
    if holds is None:
        return Report(rid, claim, lhs, rhs, INAPPLICABLE, solver, oracle, note or "beyond budget", seed)
    ok = holds and _agree(solver, oracle)
    if holds and not ok:
        note = note or "solver and oracle disagree"
    return Report(rid, claim, lhs, rhs, PASS if ok else FAIL, solver, oracle, note, seed)


def check_prop23(inst: Multigraph | Tile, budget: int = 3, rid: str = "prop23", seed: int | None = None) -> Report:
    """Weighted crossing number equals that of the unit-weight expansion."""
    g = inst if isinstance(inst, Multigraph) else inst.graph
    plus = expand_weights(g).graph
    expanded = plus if isinstance(inst, Multigraph) else inst.with_graph(plus)
    lhs, rhs = _value(inst, budget), _value(expanded, budget)
    orc = _Oracle()
    oracle = {"lhs": orc(inst, budget)}
    holds = None if lhs is None and rhs is None else lhs == rhs
    return _finish(rid, "prop23", lhs, rhs, holds, {"lhs": lhs, "rhs": rhs}, oracle, orc, seed)


def check_ex22(tiles: Sequence[Tile], budget: int = 3, rid: str = "ex22", seed: int | None = None) -> Report:
    """Joins of twisted planar tiles: tcr 0 for even length, at most the min otherwise."""
    for t in tiles:
        if _value(invert_right(t), 0) != 0:
            return Report(rid, "ex22", None, None, INAPPLICABLE, note="a tile is not twisted planar", seed=seed)
    joined = join_seq(tiles)
    lhs = _value(joined, budget)
    orc = _Oracle()
    oracle = {"lhs": orc(joined, budget)}
    if len(tiles) % 2 == 0:
        rhs = 0
        holds = lhs == 0
        solver = {"lhs": lhs}
    else:
        each = [_value(t, budget) for t in tiles]
        known = [v for v in each if v is not None]
        rhs = min(known) if known else None
        holds = _at_most(lhs, rhs)
        solver = {"lhs": lhs, "rhs": rhs}
        ovals = [orc(t, budget) for t in tiles]
        oknown = [v for v in ovals if v is not None]
        oracle["rhs"] = min(oknown) if oknown else None
    return _finish(rid, "ex22", lhs, rhs, holds, solver, oracle, orc, seed)


def check_lemma42(tiles: Sequence[Tile], budget: int = 3, rid: str = "lemma42", seed: int | None = None) -> Report:
    """tcr of the parity-corrected join equals the least twisted tcr of its parts."""
    for t in tiles:
        if not validate_diag_sep(t):
            return Report(rid, "lemma42", None, None, INAPPLICABLE, note="a tile is not diagonally separated", seed=seed)
    u = composed_tile(tiles)
    lhs = _value(u, budget)
    each = [_value(invert_right(t), budget) for t in tiles]
    known = [v for v in each if v is not None]
    rhs = min(known) if known else None
    orc = _Oracle()
    oracle = {"lhs": orc(u, budget)}
    ovals = [orc(invert_right(t), budget) for t in tiles]
    oknown = [v for v in ovals if v is not None]
    oracle["rhs"] = min(oknown) if oknown else None
    holds = None if lhs is None and rhs is None else lhs == rhs
    return _finish(rid, "lemma42", lhs, rhs, holds, {"lhs": lhs, "rhs": rhs}, oracle, orc, seed)


def check_cor43(a: AnchoredGraph, kmax: int = 3, rid: str = "cor43", seed: int | None = None) -> Report:
    """acr(a) <= k iff tcr(T0^↕) <= k for every k in 0..kmax."""
    try:
        t0, _ = anchored_to_tile(a)
    except ConstructionError as exc:
        return Report(rid, "cor43", None, None, INAPPLICABLE, note=str(exc), seed=seed)
    twisted = invert_right(t0)
    lhs, rhs = _value(a, kmax), _value(twisted, kmax)
    per_k = [(lhs is not None and lhs <= k) == (rhs is not None and rhs <= k) for k in range(kmax + 1)]
    orc = _Oracle()
    oracle = {"lhs": orc(a, kmax), "rhs": orc(twisted, kmax)}
    holds = all(per_k) and bool(validate_diag_sep(t0))
    note = "" if validate_diag_sep(t0) else "constructed tile fails validation"
    return _finish(rid, "cor43", lhs, rhs, holds, {"lhs": lhs, "rhs": rhs}, oracle, orc, seed, note)


def check_lemma51(tiles: Sequence[Tile], k: int, rid: str = "lemma51", seed: int | None = None) -> Report:
    """cr(G) <= k iff some tcr(T_i^↕) <= k, and G minus e1 is planar."""
    try:
        inst = cross_compose(tiles, k)
    except ConstructionError as exc:
        return Report(rid, "lemma51", None, None, INAPPLICABLE, note=str(exc), seed=seed)
    g_val = _value(inst.graph, k)
    parts = [_value(invert_right(t), k) for t in tiles]
    lhs = g_val is not None
    rhs = any(v is not None for v in parts)
    rest = _value(inst.graph.without_edges([inst.e1]), 0)
    orc = _Oracle()
    og = orc(inst.graph, k)
    oparts = [orc(invert_right(t), k) for t in tiles]
    orest = orc(inst.graph.without_edges([inst.e1]), 0)
    solver = {"cr": g_val, "parts": parts, "cr_minus_e1": rest}
    oracle = {"cr": og, "parts": oparts, "cr_minus_e1": orest}
    holds = lhs == rhs and rest == 0
    return _finish(rid, "lemma51", lhs, rhs, holds, solver, oracle, orc, seed)


# -- seeded suites ----------------------------------------------------------


def _prop23_cases(seed: int, count: int) -> Iterator[tuple[int, Multigraph | Tile]]:
    for i in range(count):
        s = seed * 1000 + i
        if i % 3 == 2:
            yield s, gen_tile(s, n=6, m=7 + i % 3, wmax=2, width=1 + i % 2)
        elif i % 3 == 1:
            yield s, _weighted_kuratowski(s)
        else:
            yield s, gen_multigraph(s, n=5 + i % 2, m=10 + i % 3, wmax=2, tag="prop23", parallel=0.1)


def _weighted_kuratowski(s: int) -> Multigraph:
    """K5 or K3,3 with one or two edges of weight 2."""
    rng = random.Random(f"kuratowski:{s}")
    if rng.random() < 0.5:
        pairs = [(f"v{a}", f"v{b}") for a in range(5) for b in range(a + 1, 5)]
    else:
        pairs = [(f"v{a}", f"w{b}") for a in range(3) for b in range(3)]
    heavy = set(rng.sample(range(len(pairs)), rng.randint(1, 2)))
    return Multigraph.from_edges([(u, v, 2 if j in heavy else 1) for j, (u, v) in enumerate(pairs)])


def _ex22_cases(seed: int, count: int) -> Iterator[tuple[int, list[Tile]]]:
    for i in range(count):
        s = seed * 1000 + i
        m = 1 + i % 4
        tiles = [
            cross_tile() if (s + j) % 3 == 0 else gen_twisted_planar_tile(s * 10 + j, n=6, m=9)
            for j in range(m)
        ]
        yield s, tiles


def _diag_tile(s: int) -> Tile:
    pick = random.Random(f"diag:{s}").randrange(5)
    if pick == 0:
        return tmin()
    if pick == 1:
        return anchored_to_tile(ag1())[0]
    return gen_diag_sep_tile(s, 2, 1 + pick % 2, inner1=0, inner2=pick % 2)


def _hard_tile(s: int) -> Tile:
    """Diagonally separated tile whose twisted version needs a crossing."""
    for j in range(100):
        a = gen_anchored_pair(s * 100 + j, 2, 2, inner1=0, inner2=j % 2)
        if solve(a, 0).value is None:
            return anchored_to_tile(a)[0]
    return anchored_to_tile(ag1())[0]


def _lemma42_cases(seed: int, count: int) -> Iterator[tuple[int, list[Tile]]]:
    for i in range(count):
        s = seed * 1000 + i
        yield s, [_diag_tile(s * 10 + j) for j in range(1 + i % 3)]


def _cor43_cases(seed: int, count: int) -> Iterator[tuple[int, AnchoredGraph]]:
    for i in range(count):
        s = seed * 1000 + i
        if i == 0:
            yield s, ag1()
        else:
            yield s, gen_anchored_pair(s, 2 + i % 2, 2, inner1=(i // 2) % 2, inner2=0)


def _lemma51_cases(seed: int, count: int, max_k: int) -> Iterator[tuple[int, list[Tile], int]]:
    for i in range(count):
        s = seed * 1000 + i
        m = 1 + i % 3
        k = min(max_k, (i // 3) % 2)
        pick = _hard_tile if i % 2 else _diag_tile
        yield s, [pick(s * 10 + j) for j in range(m)], k


def run_suite(claim: str, seed: int = 0, count: int = 10, max_k: int = 3) -> list[Report]:
    """Deterministic reports for ``count`` instances derived from ``seed``."""
    out: list[Report] = []
    if claim == "prop23":
        for s, inst in _prop23_cases(seed, count):
            out.append(check_prop23(inst, max_k, f"prop23-{s}", s))
    elif claim == "ex22":
        for s, tiles in _ex22_cases(seed, count):
            out.append(check_ex22(tiles, max_k, f"ex22-{s}-m{len(tiles)}", s))
    elif claim == "lemma42":
        for s, tiles in _lemma42_cases(seed, count):
            out.append(check_lemma42(tiles, max_k, f"lemma42-{s}-m{len(tiles)}", s))
    elif claim == "cor43":
        for s, a in _cor43_cases(seed, count):
            out.append(check_cor43(a, max_k, f"cor43-{s}", s))
    elif claim == "lemma51":
        for s, tiles, k in _lemma51_cases(seed, count, max_k):
            out.append(check_lemma51(tiles, k, f"lemma51-{s}-m{len(tiles)}-k{k}", s))
    else:
        raise ValueError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")
    return sorted(out, key=lambda r: r.id)
