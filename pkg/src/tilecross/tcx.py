"""The TCX line format for graphs, tiles and anchored graphs; witnesses; DOT export.

A document starts with ``graph``, then ``v NAME`` and ``e U V [w=N] [id=N]``
lines. ``lwall``/``rwall`` lines make it a tile, an ``anchors`` line an
anchored graph. ``#`` starts a comment. Edge ids default to the order of
``e`` lines.
"""

from __future__ import annotations

from typing import Iterable

from .graph import AnchoredGraph, Edge, GraphError, Multigraph
from .solver.spec import CrossingSpec, Instance, Planarization
from .tiles import Tile


class TcxError(GraphError):
    def __init__(self, line: int, col: int, msg: str) -> None:
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col
        self.msg = msg


def _tokens(text: str) -> Iterable[tuple[int, list[tuple[int, str]]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks: list[tuple[int, str]] = []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            toks.append((i + 1, body[i:j]))
            i = j
        if toks:
            yield no, toks


def _int(no: int, col: int, tok: str, key: str) -> int:
    val = tok[len(key) + 1:]
    if not val.isdigit():
        raise TcxError(no, col, f"expected {key}=<nonnegative integer>, got {tok!r}")
    return int(val)


def parse_tcx(text: str) -> Instance:
    """Parse a TCX document into a Multigraph, Tile or AnchoredGraph."""
    lines = list(_tokens(text))
    if not lines or lines[0][1][0][1] != "graph" or len(lines[0][1]) != 1:
        no, toks = lines[0] if lines else (1, [(1, "")])
        raise TcxError(no, toks[0][0], "document must start with a 'graph' line")
    vertices: dict[str, int] = {}
    edges: list[tuple[int, int, str, str, int, int | None]] = []
    sections: dict[str, tuple[int, list[tuple[int, str]]]] = {}
    for no, toks in lines[1:]:
        (col, kw), args = toks[0], toks[1:]
        if kw == "v":
            if len(args) != 1:
                raise TcxError(no, col, "expected 'v NAME'")
            vcol, name = args[0]
            if name in vertices:
                raise TcxError(no, vcol, f"duplicate vertex id {name!r}")
            vertices[name] = no
        elif kw == "e":
            if len(args) < 2:
                raise TcxError(no, col, "expected 'e U V [w=N] [id=N]'")
            (_, u), (_, v) = args[0], args[1]
            w, eid = 1, None
            for acol, tok in args[2:]:
                if tok.startswith("w="):
                    w = _int(no, acol, tok, "w")
                elif tok.startswith("id="):
                    eid = _int(no, acol, tok, "id")
                else:
                    raise TcxError(no, acol, f"unexpected token {tok!r}")
            if u == v:
                raise TcxError(no, args[1][0], f"self-loop at {u!r}")
            if w < 1:
                raise TcxError(no, col, "edge weight must be at least 1")
            edges.append((no, col, u, v, w, eid))
        elif kw in ("lwall", "rwall", "anchors"):
            if kw in sections:
                raise TcxError(no, col, f"repeated section {kw!r}")
            sections[kw] = (no, args)
        else:
            raise TcxError(no, col, f"unknown keyword {kw!r}")

    for no, col, u, v, _, _ in edges:
        for x in (u, v):
            vertices.setdefault(x, no)
    used: set[int] = set()
    built: list[Edge] = []
    for idx, (no, col, u, v, w, eid) in enumerate(edges):
        eid = idx if eid is None else eid
        if eid in used:
            raise TcxError(no, col, f"duplicate edge id {eid}")
        used.add(eid)
        built.append(Edge(eid, u, v, w))
    try:
        g = Multigraph(vertices, built)
    except GraphError as exc:
        raise TcxError(lines[0][0], 1, str(exc)) from None

    def names(key: str) -> tuple[int, tuple[str, ...]]:
        no, args = sections[key]
        for col, name in args:
            if name not in vertices:
                raise TcxError(no, col, f"unknown vertex {name!r} in {key}")
        return no, tuple(name for _, name in args)

    walls = [k for k in ("lwall", "rwall") if k in sections]
    if walls and "anchors" in sections:
        no = sections["anchors"][0]
        raise TcxError(no, 1, "a document cannot have both walls and anchors")
    if len(walls) == 1:
        no = sections[walls[0]][0]
        raise TcxError(no, 1, "a tile needs both 'lwall' and 'rwall'")
    if walls:
        lno, lw = names("lwall")
        rno, rw = names("rwall")
        for no, key, wall in ((lno, "left", lw), (rno, "right", rw)):
            if len(set(wall)) != len(wall):
                raise TcxError(no, 1, f"repeated wall vertex in {key} wall")
        try:
            return Tile(g, lw, rw)
        except GraphError as exc:
            raise TcxError(rno, 1, str(exc)) from None
    if "anchors" in sections:
        no, sigma = names("anchors")
        try:
            return AnchoredGraph(g, sigma)
        except GraphError as exc:
            raise TcxError(no, 1, str(exc)) from None
    return g


def write_tcx(obj: Instance) -> str:
    """Canonical text: sorted vertices, edges by id, ``w=``/``id=`` only when needed."""
    g = obj if isinstance(obj, Multigraph) else obj.graph
    dense = list(g.edge_ids) == list(range(len(g.edges)))
    out = ["graph"]
    out += [f"v {v}" for v in g.vertices]
    for e in g.edges:
        line = f"e {e.u} {e.v}"
        if e.weight != 1:
            line += f" w={e.weight}"
        if not dense:
            line += f" id={e.id}"
        out.append(line)
    if isinstance(obj, Tile):
        out.append("lwall " + " ".join(obj.lwall))
        out.append("rwall " + " ".join(obj.rwall))
    elif isinstance(obj, AnchoredGraph):
        out.append("anchors " + " ".join(obj.sigma))
    return "\n".join(out) + "\n"


def write_witness(spec: CrossingSpec) -> str:
    out = ["witness"]
    out += [f"x {e} {f}" for e, f in spec.pairs]
    for e, seq in spec.orders:
        if len(seq) > 1:
            out.append(f"order {e} " + " ".join(map(str, seq)))
    return "\n".join(out) + "\n"


def parse_witness(text: str) -> CrossingSpec:
    """Read ``x E F`` crossing lines and optional ``order E F1 F2 ...`` lines."""
    lines = list(_tokens(text))
    if not lines or [t for _, t in lines[0][1]] != ["witness"]:
        no = lines[0][0] if lines else 1
        raise TcxError(no, 1, "witness must start with a 'witness' line")
    pairs: list[tuple[int, int]] = []
    orders: dict[int, tuple[int, ...]] = {}
    for no, toks in lines[1:]:
        (col, kw), args = toks[0], toks[1:]
        for acol, tok in args:
            if not tok.isdigit():
                raise TcxError(no, acol, f"expected an edge id, got {tok!r}")
        ids = [int(t) for _, t in args]
        if kw == "x":
            if len(ids) != 2:
                raise TcxError(no, col, "expected 'x E F'")
            pairs.append((ids[0], ids[1]))
        elif kw == "order":
            if len(ids) < 2:
                raise TcxError(no, col, "expected 'order E F1 [F2 ...]'")
            if ids[0] in orders:
                raise TcxError(no, col, f"repeated order for edge {ids[0]}")
            orders[ids[0]] = tuple(ids[1:])
        else:
            raise TcxError(no, col, f"unknown keyword {kw!r}")
    return CrossingSpec.build(pairs, orders)


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: Planarization, context: Instance | None = None) -> str:
    """Undirected DOT of a planarization; dummies are filled squares.

    With a tile or anchored graph as ``context``, wall and anchor vertices get
    an ``xlabel`` with their position (L1, R2, A3, ...).
    """
    marks: dict[str, str] = {}
    if isinstance(context, Tile):
        marks.update({v: f"L{i + 1}" for i, v in enumerate(context.lwall)})
        marks.update({v: f"R{i + 1}" for i, v in enumerate(context.rwall)})
    elif isinstance(context, AnchoredGraph):
        marks.update({v: f"A{i + 1}" for i, v in enumerate(context.sigma)})
    dummies = p.dummies
    out = ["graph planarization {", "  node [shape=circle];"]
    for v in p.derived.vertices:
        attrs = []
        if v in dummies:
            attrs.append('shape=square, style=filled, label=""')
        if v in marks:
            attrs.append(f'xlabel="{marks[v]}"')
        out.append(f"  {_q(v)}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for e in p.derived.edges:
        out.append(f'  {_q(e.u)} -- {_q(e.v)} [label="{e.weight}"];')
    out.append("}")
    return "\n".join(out) + "\n"
