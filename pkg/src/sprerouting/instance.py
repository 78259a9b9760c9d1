"""Layered view of a graph with respect to two terminals, and targets.

An S-path is a shortest st-path; it meets every layer exactly once and is
stored as the tuple of its vertices ordered by layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    EmbeddingInvalid,
    GraphError,
    InvalidTarget,
    NoEmbedding,
    TerminalOnCycle,
    UnreachableTerminals,
)
from .graph import PlaneGraph, check_cycle, separates, trace_faces

SPath = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class LayeredInstance:
    graph: PlaneGraph
    s: int
    t: int
    d: int
    dist_s: Mapping[int, int]
    dist_t: Mapping[int, int]
    layers: tuple[tuple[int, ...], ...]

    @cached_property
    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    def on_spath(self, v: int) -> bool:
        return v in self.layer_of

    def successors(self, v: int) -> list[int]:
        """Neighbors of ``v`` in the next layer (edges of the S-path DAG)."""
        i = self.layer_of[v]
        return [w for w in self.graph.neighbors(v) if self.layer_of.get(w) == i + 1]

    def predecessors(self, v: int) -> list[int]:
        i = self.layer_of[v]
        return [w for w in self.graph.neighbors(v) if self.layer_of.get(w) == i - 1]

    def layer_neighbors(self, v: int) -> list[int]:
        i = self.layer_of[v]
        return [w for w in self.graph.neighbors(v) if self.layer_of.get(w) == i]

    def is_spath(self, path: Sequence[int]) -> bool:
        if len(path) != self.d + 1:
            return False
        for i, v in enumerate(path):
            if self.layer_of.get(v) != i:
                return False
        return all(self.graph.has_edge(path[i], path[i + 1]) for i in range(self.d))

    def layer_edges(self) -> list[tuple[int, int]]:
        lo = self.layer_of
        return [(u, v) for u, v in self.graph.edges() if u in lo and lo[u] == lo.get(v)]

    def with_graph(self, graph: PlaneGraph) -> "LayeredInstance":
        """Re-layer ``graph`` for the same terminals."""
        return build_layered_instance(graph, self.s, self.t)


def build_layered_instance(graph: PlaneGraph, s: int, t: int) -> LayeredInstance:
    if s == t:
        raise GraphError("terminals must be distinct")
    for v in (s, t):
        if v not in graph:
            raise GraphError(f"terminal {v} is not a vertex")
    dist_s = graph.bfs_distances(s)
    if t not in dist_s:
        raise UnreachableTerminals(f"no path from {s} to {t}")
    dist_t = graph.bfs_distances(t)
    d = dist_s[t]
    layers: list[list[int]] = [[] for _ in range(d + 1)]
    for v, ds in dist_s.items():
        if ds + dist_t[v] == d:
            layers[ds].append(v)
    return LayeredInstance(
        graph, s, t, d, dist_s, dist_t, tuple(tuple(sorted(layer)) for layer in layers)
    )


def subinstance_between(inst: LayeredInstance, a: int, b: int) -> LayeredInstance:
    """Subgraph induced by all vertices on shortest ab-paths, terminals a and b."""
    g = inst.graph
    da = g.bfs_distances(a)
    db = g.bfs_distances(b)
    span = da[b]
    keep = [v for v in da if v in db and da[v] + db[v] == span]
    return build_layered_instance(g.induced(keep), a, b)


# -- targets -------------------------------------------------------------


@dataclass(frozen=True)
class Target:
    """What has to be reached: a full S-path, a subpath, a switch pair or a vertex."""

    kind: str
    vertices: tuple[int, ...]

    KINDS = ("path", "subpath", "pair", "vertex")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidTarget(f"unknown target kind {self.kind!r}")
        if self.kind == "pair" and len(self.vertices) != 2:
            raise InvalidTarget("a switch-pair target has two vertices")
        if self.kind == "vertex" and len(self.vertices) != 1:
            raise InvalidTarget("a vertex target has one vertex")

    @classmethod
    def path(cls, vertices: Iterable[int]) -> "Target":
        return cls("path", tuple(vertices))

    @classmethod
    def subpath(cls, vertices: Iterable[int]) -> "Target":
        return cls("subpath", tuple(sorted(set(vertices))))

    @classmethod
    def pair(cls, x: int, y: int) -> "Target":
        return cls("pair", (x, y))

    @classmethod
    def vertex(cls, v: int) -> "Target":
        return cls("vertex", (v,))

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def as_vertex_set(target: Target | Iterable[int]) -> frozenset[int]:
    if isinstance(target, Target):
        return target.vertex_set
    return frozenset(target)


def is_subpath(inst: LayeredInstance, vertices: Iterable[int]) -> bool:
    """Whether some S-path contains all of ``vertices``."""
    lo = inst.layer_of
    fixed: dict[int, int] = {}
    for v in vertices:
        if v not in lo:
            return False
        i = lo[v]
        if fixed.get(i, v) != v:
            return False
        fixed[i] = v
    fixed.setdefault(0, inst.s)
    fixed.setdefault(inst.d, inst.t)
    chain = [fixed[i] for i in sorted(fixed)]
    for u, w in zip(chain, chain[1:]):
        if not _dag_reaches(inst, u, w):
            return False
    return True


def _dag_reaches(inst: LayeredInstance, u: int, w: int) -> bool:
    target_layer = inst.layer_of[w]
    frontier = {u}
    for _ in range(inst.layer_of[u], target_layer):
        frontier = {x for v in frontier for x in inst.successors(v)}
        if not frontier:
            return False
    return w in frontier


def validate_target(inst: LayeredInstance, target: Target | Iterable[int]) -> bool:
    if isinstance(target, Target) and target.kind == "path":
        return inst.is_spath(target.vertices)
    return is_subpath(inst, as_vertex_set(target))


def complete_target(inst: LayeredInstance, vertices: Iterable[int]) -> SPath:
    """Some S-path containing ``vertices`` (smallest ids first)."""
    vertices = frozenset(vertices)
    if not is_subpath(inst, vertices):
        raise InvalidTarget(f"{sorted(vertices)} is not an S-subpath")
    lo = inst.layer_of
    fixed = {lo[v]: v for v in vertices}
    fixed.setdefault(0, inst.s)
    fixed.setdefault(inst.d, inst.t)
    path = [inst.s]
    for i in range(1, inst.d + 1):
        nxt = sorted(inst.successors(path[-1]))
        # pick the next vertex from which the next fixed vertex stays reachable
        k = min(j for j in fixed if j >= i)
        for w in ([fixed[i]] if i in fixed else nxt):
            if w in nxt and _dag_reaches(inst, w, fixed[k]):
                path.append(w)
                break
        else:  # pragma: no cover - excluded by is_subpath
            raise InvalidTarget("target cannot be completed")
    return tuple(path)


# -- embedding checks ----------------------------------------------------


def is_separating_cycle(inst: LayeredInstance, cycle: Sequence[int]) -> bool:
    g = inst.graph
    if g.rotation is None:
        raise NoEmbedding("separation test needs a rotation system")
    check_cycle(g, cycle)
    if inst.s in cycle or inst.t in cycle:
        raise TerminalOnCycle("a terminal lies on the cycle")
    return separates(g, cycle, inst.s, inst.t)


def validate_plane_instance(inst: LayeredInstance, expect_reduced: bool) -> list[str]:
    g = inst.graph
    report: list[str] = []
    if g.rotation is None:
        return ["no rotation system"]
    try:
        comp = g.component_of(inst.s)
        trace_faces(g if len(comp) == g.vertex_count else g.induced(comp))
    except EmbeddingInvalid as exc:
        report.append(f"euler: {exc}")
    if expect_reduced:
        lo = inst.layer_of
        for v in sorted(lo):
            if v in (inst.s, inst.t):
                continue
            i = lo[v]
            sides = ["in" if lo.get(w) == i - 1 else "out" if lo.get(w) == i + 1 else "other"
                     for w in g.rotation[v]]
            for side in ("in", "out"):
                if _cyclic_runs(sides, side) > 1:
                    report.append(f"vertex {v}: {side}-neighbors not consecutive in rotation")
    return report


def _cyclic_runs(labels: list[str], value: str) -> int:
    n = len(labels)
    if all(x == value for x in labels):
        return 1
    return sum(1 for j in range(n) if labels[j] == value and labels[j - 1] != value)


# -- answers -------------------------------------------------------------


@dataclass
class Verdict:
    reachable: bool
    witness: SPath | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)
    decomposition: dict[str, Any] | None = None
    sequence: list[SPath] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"reachable": self.reachable, "diagnostics": self.diagnostics}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition
        if self.sequence is not None:
            out["sequence"] = [list(p) for p in self.sequence]
        return out
