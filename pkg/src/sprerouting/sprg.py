"""Reading and writing the line-oriented ``.sprg`` instance format.

    # comment
    GRAPH <n>
    EDGE <u> <v>
    ROT <v> <k> <w1> ... <wk>        clockwise neighbor order
    TERMINALS <s> <t>
    PATH <v0> ... <vd>
    TARGET PATH|SUBPATH|PAIR|VERTEX <ids>
    VARIANT SPR|GSPR|RSPR|TSPR
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import GraphError, ParseError
from .graph import PlaneGraph
from .instance import LayeredInstance, SPath, Target, build_layered_instance

VARIANTS = ("SPR", "GSPR", "RSPR", "TSPR")
TARGET_KINDS = {"PATH": "path", "SUBPATH": "subpath", "PAIR": "pair", "VERTEX": "vertex"}


@dataclass
class SprgDocument:
    graph: PlaneGraph
    s: int
    t: int
    path: SPath | None = None
    target: Target | None = None
    variant: str | None = None

    def instance(self) -> LayeredInstance:
        return build_layered_instance(self.graph, self.s, self.t)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        out = [int(x) for x in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None
    if any(v < 0 for v in out):
        raise ParseError(f"line {lineno}: vertex ids are non-negative")
    return out


def parse_sprg(text: str) -> SprgDocument:
    n = None
    edges: list[tuple[int, int]] = []
    rot: dict[int, tuple[int, ...]] = {}
    terminals = path = target = variant = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        key, args = line[0].upper(), line[1:]
        if key == "GRAPH":
            if n is not None:
                raise ParseError(f"line {lineno}: GRAPH given twice")
            (n,) = _exact(args, 1, lineno)
        elif n is None:
            raise ParseError(f"line {lineno}: {key} before GRAPH")
        elif key == "EDGE":
            u, v = _exact(args, 2, lineno)
            edges.append((u, v))
        elif key == "ROT":
            vals = _ints(args, lineno)
            if len(vals) < 2 or len(vals) != vals[1] + 2:
                raise ParseError(f"line {lineno}: ROT <v> <k> followed by k neighbors")
            if vals[0] in rot:
                raise ParseError(f"line {lineno}: second ROT for vertex {vals[0]}")
            rot[vals[0]] = tuple(vals[2:])
        elif key == "TERMINALS":
            terminals = _exact(args, 2, lineno)
        elif key == "PATH":
            path = tuple(_ints(args, lineno))
        elif key == "TARGET":
            if not args or args[0].upper() not in TARGET_KINDS:
                raise ParseError(f"line {lineno}: TARGET PATH|SUBPATH|PAIR|VERTEX <ids>")
            kind = TARGET_KINDS[args[0].upper()]
            ids = _ints(args[1:], lineno)
            try:
                target = Target.subpath(ids) if kind == "subpath" else Target(kind, tuple(ids))
            except Exception as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        elif key == "VARIANT":
            if len(args) != 1 or args[0].upper() not in VARIANTS:
                raise ParseError(f"line {lineno}: VARIANT {'|'.join(VARIANTS)}")
            variant = args[0].upper()
        else:
            raise ParseError(f"line {lineno}: unknown keyword {line[0]!r}")
    if n is None:
        raise ParseError("missing GRAPH line")
    if terminals is None:
        raise ParseError("missing TERMINALS line")
    for v, _ in rot.items():
        if not 0 <= v < n:
            raise ParseError(f"ROT for unknown vertex {v}")
    try:
        graph = PlaneGraph.from_edges(n, edges, rot if rot else None)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    s, t = terminals
    return SprgDocument(graph, s, t, path, target, variant)


def _exact(args: list[str], k: int, lineno: int) -> list[int]:
    if len(args) != k:
        raise ParseError(f"line {lineno}: expected {k} values")
    return _ints(args, lineno)


def read_sprg(path: str | Path) -> SprgDocument:
    return parse_sprg(Path(path).read_text())


def write_sprg(doc: SprgDocument, comment: str | None = None) -> str:
    g = doc.graph
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    n = max(g.vertices) + 1 if g.vertex_count else 0
    lines.append(f"GRAPH {n}")
    lines.extend(f"EDGE {u} {v}" for u, v in sorted(g.edges()))
    if g.rotation is not None:
        for v in sorted(g.vertices):
            order = g.rotation[v]
            if order:
                lines.append(f"ROT {v} {len(order)} " + " ".join(map(str, order)))
    lines.append(f"TERMINALS {doc.s} {doc.t}")
    if doc.path is not None:
        lines.append("PATH " + " ".join(map(str, doc.path)))
    if doc.target is not None:
        kind = {v: k for k, v in TARGET_KINDS.items()}[doc.target.kind]
        lines.append(f"TARGET {kind} " + " ".join(map(str, doc.target.vertices)))
    if doc.variant is not None:
        lines.append(f"VARIANT {doc.variant}")
    return "\n".join(lines) + "\n"
