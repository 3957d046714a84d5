"""Reading and writing graphs, partial maps, Rees matrices and gain graphs.

Every JSON document written here carries a top-level ``"schema"`` string.
Readers accept documents without one, so hand-written files stay short.
Vertices are 0-based in files; partial maps given as strings use the
1-based ``"1>3,2>3"`` notation of the command line.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput
from .gain import GainGraph
from .graphs import Edge, Multigraph, SimpleGraph
from .groups import by_name
from .pfun import UNDEF, PartialFunction
from .rees import ReesMatrixSemigroup

GRAPH_SCHEMA = "degree2.graph/1"
MAPS_SCHEMA = "degree2.maps/1"
REES_SCHEMA = "degree2.rees/1"
GAIN_SCHEMA = "degree2.gain/1"


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _need(doc: dict, key: str, where):
    if key not in doc:
        raise InvalidInput(f"{where}: missing field {key!r}")
    return doc[key]


# ---------------------------------------------------------------------------
# graphs

def graph_from_json(doc: dict, where="graph") -> SimpleGraph:
    n = _need(doc, "n", where)
    edges = _need(doc, "edges", where)
    if not isinstance(n, int) or n < 0:
        raise InvalidInput(f"{where}: 'n' must be a non-negative integer")
    pairs = []
    for k, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise InvalidInput(f"{where}: edge #{k} must be a pair of integers, got {e!r}")
        pairs.append(tuple(e))
    return SimpleGraph.from_edges(n, pairs)


def graph_to_json(g: SimpleGraph) -> dict:
    return {"schema": GRAPH_SCHEMA, "n": g.n, "edges": [list(e) for e in g.edge_list]}


def parse_edge_list(text: str, where="edge list") -> SimpleGraph:
    """``n`` on the first non-blank line, then one ``u v`` pair per line; ``#`` starts a comment."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise InvalidInput(f"{where}: line {lineno}: expected integers, got {raw.strip()!r}") from None
        if n is None:
            if len(nums) != 1:
                raise InvalidInput(f"{where}: line {lineno}: header must be the vertex count")
            n = nums[0]
        elif len(nums) != 2:
            raise InvalidInput(f"{where}: line {lineno}: expected 'u v'")
        else:
            pairs.append(tuple(nums))
    if n is None:
        raise InvalidInput(f"{where}: empty file")
    return SimpleGraph.from_edges(n, pairs)


def format_edge_list(g: SimpleGraph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edge_list]) + "\n"


def load_graph(path) -> SimpleGraph:
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return graph_from_json(_read_json(path), where=str(path))
    return parse_edge_list(text, where=str(path))


def save_graph(g: SimpleGraph, path):
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(dumps(graph_to_json(g)))
    else:
        path.write_text(format_edge_list(g))


def to_dot(g: SimpleGraph, name="G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edge_list]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# partial maps

def pfun_to_json(f: PartialFunction) -> dict:
    return {"table": [None if x == UNDEF else x for x in f.table], "n": f.dom_size, "m": f.cod_size}


def pfun_from_json(doc, n: int | None = None) -> PartialFunction:
    """Accepts ``{"table": [...], "n", "m"}``, a bare table, or a ``"1>3,2>3"`` string."""
    if isinstance(doc, str):
        if n is None:
            raise InvalidInput("a map written as a string needs the set size")
        return PartialFunction.parse(doc, n)
    if isinstance(doc, list):
        table = doc
        m = n
    else:
        table = _need(doc, "table", "map")
        m = doc.get("m", doc.get("n", len(table)))
    table = [UNDEF if x is None else x for x in table]
    return PartialFunction(table, m if m is not None else len(table))


def load_maps(path) -> tuple:
    """Generator file: ``{"n": 4, "maps": [...]}``. Returns ``(n, maps)``."""
    doc = _read_json(path)
    n = _need(doc, "n", path)
    maps = [pfun_from_json(x, n) for x in _need(doc, "maps", path)]
    for f in maps:
        if f.dom_size != n or f.cod_size != n:
            raise InvalidInput(f"{path}: map {f.pretty()} does not act on {n} points")
    return n, maps


def maps_to_json(n: int, maps) -> dict:
    return {"schema": MAPS_SCHEMA, "n": n, "maps": [[None if x == UNDEF else x for x in f.table] for f in maps]}


# ---------------------------------------------------------------------------
# Rees matrices

def rees_from_json(doc: dict, where="rees") -> ReesMatrixSemigroup:
    group = by_name(str(doc.get("group", "1")))
    rows = _need(doc, "C", where)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InvalidInput(f"{where}: 'C' must be a non-empty rectangular matrix")
    S = ReesMatrixSemigroup.from_names(group, [[str(x) for x in r] for r in rows], doc.get("A"), doc.get("B"))
    if len(S.A) != len(rows[0]) or len(S.B) != len(rows):
        raise InvalidInput(f"{where}: index sets do not match the matrix shape")
    return S


def rees_to_json(S: ReesMatrixSemigroup) -> dict:
    return {"schema": REES_SCHEMA, "group": S.group.label or "1", "A": list(S.A), "B": list(S.B),
            "C": S.entry_names()}


def load_rees(path) -> ReesMatrixSemigroup:
    return rees_from_json(_read_json(path), where=str(path))


# ---------------------------------------------------------------------------
# gain graphs

def gain_from_json(doc: dict, where="gain") -> GainGraph:
    group = by_name(str(doc.get("group", "1")))
    n = _need(doc, "n", where)
    raw = _need(doc, "edges", where)
    edges = []
    for k, e in enumerate(raw):
        if isinstance(e, dict):
            edges.append(Edge(e["id"], e["tail"], e["head"]))
        elif isinstance(e, list) and len(e) in (2, 3):
            edges.append(Edge(*e) if len(e) == 3 else Edge(k, *e))
        else:
            raise InvalidInput(f"{where}: edge #{k} must be [tail, head] or [id, tail, head]")
    base = Multigraph(n, tuple(edges))
    labels = doc.get("labels", {})
    known = {str(e.id) for e in base.edges}
    for key in labels:
        if str(key) not in known:
            raise InvalidInput(f"{where}: label for unknown edge id {key}")
    values = tuple(group.index(str(labels.get(str(e.id), group.name(group.identity)))) for e in base.edges)
    return GainGraph(base, group, values)


def gain_to_json(gg: GainGraph) -> dict:
    G = gg.group
    return {
        "schema": GAIN_SCHEMA,
        "group": G.label or "1",
        "n": gg.base.n,
        "edges": [[e.id, e.tail, e.head] for e in gg.base.edges],
        "labels": {str(e.id): G.name(x) for e, x in zip(gg.base.edges, gg.labels)},
    }


def load_gain(path) -> GainGraph:
    return gain_from_json(_read_json(path), where=str(path))


def gain_to_dot(gg: GainGraph, name="G") -> str:
    """Directed DOT; edges with a non-identity label are drawn red and carry the label."""
    G = gg.group
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in range(gg.base.n)]
    for e, x in zip(gg.base.edges, gg.labels):
        if x == G.identity:
            lines.append(f"  {e.tail} -> {e.head};")
        else:
            lines.append(f'  {e.tail} -> {e.head} [label="{G.name(x)}", color=red];')
    lines.append("}")
    return "\n".join(lines) + "\n"
