"""Reading and writing annotated flow graphs.

Two encodings carry the same content:

* JSON documents::

    {"name": "max", "nodes": 7, "start": 0, "exits": [6],
     "edges": [[0, 1], ...],
     "defs": {"0": ["i"]}, "cuses": {"4": ["i"]}, "puses": {"1-3": ["i"]}}

* CFGSPEC text, one directive per line, ``#`` starts a comment::

    graph max
    start 0
    exit 6
    node 4 def i use i
    edge 1 3 puse i length
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .dua import DefUseAnnotations, is_variable_name, validate_annotations
from .errors import ParseError, SchemaError
from .graph import FlowGraph, build_graph

DEFAULT_NAME = "cfg"

_VARS = {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"}}

DOCUMENT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["nodes", "start", "exits", "edges"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "nodes": {"type": "integer", "minimum": 1},
        "start": {"type": "integer", "minimum": 0},
        "exits": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "defs": {"type": "object", "propertyNames": {"pattern": r"^[0-9]+$"}, "additionalProperties": _VARS},
        "cuses": {"type": "object", "propertyNames": {"pattern": r"^[0-9]+$"}, "additionalProperties": _VARS},
        "puses": {
            "type": "object",
            "propertyNames": {"pattern": r"^[0-9]+-[0-9]+$"},
            "additionalProperties": _VARS,
        },
    },
}


@dataclass(frozen=True)
class GraphDocument:
    name: str
    graph: FlowGraph
    annotations: DefUseAnnotations


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def parse_json(data: str | bytes) -> GraphDocument:
    """Parse and validate a JSON graph document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None

    validator = jsonschema.Draft7Validator(DOCUMENT_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        raise SchemaError(_json_path(err.absolute_path), err.message)

    count = doc["nodes"]

    def node_key(section: str, key: str) -> int:
        n = int(key)
        if n >= count:
            raise SchemaError(f"$.{section}.{key}", f"node {n} out of range [0, {count})")
        return n

    def check_node(path: str, n: int) -> int:
        if n >= count:
            raise SchemaError(path, f"node {n} out of range [0, {count})")
        return n

    check_node("$.start", doc["start"])
    for i, e in enumerate(doc["exits"]):
        check_node(f"$.exits[{i}]", e)
    for i, (a, b) in enumerate(doc["edges"]):
        check_node(f"$.edges[{i}][0]", a)
        check_node(f"$.edges[{i}][1]", b)

    defs = {node_key("defs", k): v for k, v in doc.get("defs", {}).items()}
    cuses = {node_key("cuses", k): v for k, v in doc.get("cuses", {}).items()}
    edge_set = {tuple(e) for e in doc["edges"]}
    puses = {}
    for key, v in doc.get("puses", {}).items():
        a, b = (int(x) for x in key.split("-"))
        check_node(f"$.puses.{key}", max(a, b))
        if (a, b) not in edge_set:
            raise SchemaError(f"$.puses.{key}", f"edge ({a}, {b}) is not in edges")
        puses[(a, b)] = v

    graph = build_graph(count, doc["edges"], doc["start"], doc["exits"])
    ann = DefUseAnnotations.from_lists(defs, cuses, puses)
    validate_annotations(graph, ann)
    return GraphDocument(doc.get("name", DEFAULT_NAME), graph, ann)


def parse_dsl(text: str) -> GraphDocument:
    """Parse CFGSPEC text.

    The node count is one more than the largest id mentioned anywhere.
    """
    name = None
    start = None
    exits: list[int] = []
    edges: list[tuple[int, int]] = []
    defs: dict[int, set[str]] = {}
    cuses: dict[int, set[str]] = {}
    puses: dict[tuple[int, int], set[str]] = {}
    mentioned: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        col = len(line) - len(line.lstrip()) + 1
        head, args = tokens[0], tokens[1:]

        if name is None:
            if head != "graph" or len(args) != 1:
                raise ParseError("graph header expected ('graph <name>')", lineno, col)
            name = args[0]
            continue

        def node_id(tok: str, what: str = "node id") -> int:
            if not tok.isdigit():
                raise ParseError(f"expected {what}, got {tok!r}", lineno, line.find(tok) + 1)
            n = int(tok)
            mentioned.append(n)
            return n

        if head == "graph":
            raise ParseError("duplicate graph header", lineno, col)
        elif head == "start":
            if len(args) != 1:
                raise ParseError("expected 'start <n>'", lineno, col)
            if start is not None:
                raise ParseError("duplicate start directive", lineno, col)
            start = node_id(args[0])
        elif head == "exit":
            if not args:
                raise ParseError("expected 'exit <n>'", lineno, col)
            exits.extend(node_id(a) for a in args)
        elif head == "node":
            if not args:
                raise ParseError("expected 'node <n> [def ...] [use ...]'", lineno, col)
            n = node_id(args[0])
            sections = _keyword_sections(args[1:], {"def", "use"}, lineno, line)
            defs.setdefault(n, set()).update(sections.get("def", ()))
            cuses.setdefault(n, set()).update(sections.get("use", ()))
        elif head == "edge":
            if len(args) < 2:
                raise ParseError("expected 'edge <p> <s> [puse ...]'", lineno, col)
            e = (node_id(args[0]), node_id(args[1]))
            edges.append(e)
            sections = _keyword_sections(args[2:], {"puse"}, lineno, line)
            if "puse" in sections:
                puses.setdefault(e, set()).update(sections["puse"])
        else:
            raise ParseError(
                f"unknown directive {head!r}; expected one of graph, start, exit, node, edge",
                lineno,
                col,
            )

    if name is None:
        raise ParseError("graph header expected", 1)
    last = len(text.splitlines()) or 1
    if start is None:
        raise ParseError("missing 'start <n>' directive", last)
    if not exits:
        raise ParseError("missing 'exit <n>' directive", last)

    graph = build_graph(max(mentioned) + 1, edges, start, exits)
    ann = DefUseAnnotations.from_lists(defs, cuses, puses)
    validate_annotations(graph, ann)
    return GraphDocument(name, graph, ann)


def _keyword_sections(tokens: list[str], keywords: set[str], lineno: int, line: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current = None
    for tok in tokens:
        if tok in keywords:
            if tok in sections:
                raise ParseError(f"repeated {tok!r} list", lineno, line.find(tok) + 1)
            current = tok
            sections[tok] = []
        elif current is None:
            expected = " or ".join(sorted(keywords))
            raise ParseError(f"expected {expected}, got {tok!r}", lineno, line.find(tok) + 1)
        elif not is_variable_name(tok):
            raise ParseError(f"invalid variable name {tok!r}", lineno, line.find(tok) + 1)
        else:
            sections[current].append(tok)
    return sections


def load(path: str | Path) -> GraphDocument:
    """Read a graph file; ``.json`` files (or text starting with ``{``) are JSON."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_dsl(text)


def to_json_document(doc: GraphDocument) -> dict:
    g, ann = doc.graph, doc.annotations
    return {
        "name": doc.name,
        "nodes": g.num_nodes,
        "start": g.start,
        "exits": sorted(g.exits),
        "edges": [list(e) for e in g.edges],
        "defs": {str(n): sorted(vs) for n, vs in sorted(ann.defs.items())},
        "cuses": {str(n): sorted(vs) for n, vs in sorted(ann.cuses.items())},
        "puses": {f"{a}-{b}": sorted(vs) for (a, b), vs in sorted(ann.puses.items())},
    }


def dump_json(doc: GraphDocument) -> str:
    return json.dumps(to_json_document(doc), indent=2) + "\n"


def dump_dsl(doc: GraphDocument) -> str:
    g, ann = doc.graph, doc.annotations
    lines = [f"graph {doc.name}", f"start {g.start}"]
    lines += [f"exit {e}" for e in sorted(g.exits)]
    for n in g.nodes:
        parts = [f"node {n}"]
        if ann.defs_at(n):
            parts.append("def " + " ".join(sorted(ann.defs_at(n))))
        if ann.cuses_at(n):
            parts.append("use " + " ".join(sorted(ann.cuses_at(n))))
        lines.append(" ".join(parts))
    for e in g.edges:
        line = f"edge {e[0]} {e[1]}"
        if ann.puses_at(e):
            line += " puse " + " ".join(sorted(ann.puses_at(e)))
        lines.append(line)
    return "\n".join(lines) + "\n"


def quiet_load(path: str | Path) -> tuple[GraphDocument, list[str]]:
    """:func:`load`, returning annotation warnings as strings instead of emitting them."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        doc = load(path)
    return doc, [str(w.message) for w in caught]

