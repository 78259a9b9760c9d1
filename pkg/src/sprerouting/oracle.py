"""Brute-force ground truth.

Enumerates every S-path, builds the rerouting graph under one of the three
adjacency rules and answers reachability by breadth-first search.  It is
exponential by design and refuses to run past a path budget.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NoEmbedding, PathBudgetExceeded
from .graph import separates
from .instance import LayeredInstance, SPath, Target, Verdict, as_vertex_set

UNRESTRICTED = "unrestricted"
RESTRICTED = "restricted"
TOPOLOGICAL = "topological"
VARIANTS = (UNRESTRICTED, RESTRICTED, TOPOLOGICAL)

DEFAULT_MAX_PATHS = 200_000


def enumerate_spaths(inst: LayeredInstance, max_paths: int = DEFAULT_MAX_PATHS) -> list[SPath]:
    succ = {v: sorted(inst.successors(v)) for v in inst.layer_of}
    out: list[SPath] = []
    stack = [(inst.s,)]
    while stack:
        path = stack.pop()
        if len(path) == inst.d + 1:
            out.append(path)
            if len(out) > max_paths:
                raise PathBudgetExceeded(max_paths)
            continue
        for w in reversed(succ[path[-1]]):
            stack.append(path + (w,))
    return out


def count_spaths(inst: LayeredInstance) -> int:
    """Number of S-paths by a forward count over the layers."""
    ways = {inst.s: 1}
    for layer in inst.layers[1:]:
        ways.update({v: sum(ways[u] for u in inst.predecessors(v)) for v in layer})
    return ways[inst.t]


class SwitchTest:
    """Memoized 'is x,a,b,y a switch' on one embedded instance."""

    def __init__(self, inst: LayeredInstance):
        if inst.graph.rotation is None:
            raise NoEmbedding("topological adjacency needs a rotation system")
        self.inst = inst
        self._cache: dict[tuple, bool] = {}

    def __call__(self, x: int, a: int, b: int, y: int) -> bool:
        key = (x, min(a, b), max(a, b), y)
        hit = self._cache.get(key)
        if hit is None:
            g = self.inst.graph
            terminals = {self.inst.s, self.inst.t}
            hit = (
                not terminals & {x, a, b, y}
                and g.has_edge(x, a) and g.has_edge(a, y) and g.has_edge(y, b) and g.has_edge(b, x)
                and separates(g, (x, a, y, b), self.inst.s, self.inst.t)
            )
            self._cache[key] = hit
        return hit


@dataclass
class RerouteGraph:
    variant: str
    paths: list[SPath]
    adjacency: list[list[int]]
    index: dict[SPath, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {p: k for k, p in enumerate(self.paths)}

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def component(self, start: SPath) -> list[int]:
        k0 = self.index[start]
        seen = {k0}
        order = [k0]
        queue = deque([k0])
        while queue:
            k = queue.popleft()
            for j in self.adjacency[k]:
                if j not in seen:
                    seen.add(j)
                    order.append(j)
                    queue.append(j)
        return order

    def to_dot(self) -> str:
        lines = [f'graph "{self.variant}" {{']
        for k, p in enumerate(self.paths):
            lines.append(f'  n{k} [label="{",".join(map(str, p))}"];')
        for k, nbrs in enumerate(self.adjacency):
            lines.extend(f"  n{k} -- n{j};" for j in nbrs if k < j)
        lines.append("}")
        return "\n".join(lines) + "\n"


def step_allowed(inst: LayeredInstance, variant: str, x: int, a: int, b: int, y: int,
                 switch: SwitchTest | None = None) -> bool:
    if variant == UNRESTRICTED:
        return True
    if variant == RESTRICTED:
        return inst.graph.has_edge(a, b)
    if variant == TOPOLOGICAL:
        return not (switch or SwitchTest(inst))(x, a, b, y)
    raise ValueError(f"unknown variant {variant!r}")


def reroute_neighbors(inst: LayeredInstance, path: SPath, variant: str,
                      switch: SwitchTest | None = None) -> Iterable[SPath]:
    g = inst.graph
    for j in range(1, inst.d):
        x, a, y = path[j - 1], path[j], path[j + 1]
        common = g.neighbor_set(x) & g.neighbor_set(y)
        for b in sorted(common):
            if b != a and inst.layer_of.get(b) == j and step_allowed(inst, variant, x, a, b, y, switch):
                yield path[:j] + (b,) + path[j + 1:]


def build_rerouting_graph(inst: LayeredInstance, variant: str,
                          max_paths: int = DEFAULT_MAX_PATHS) -> RerouteGraph:
    if variant == TOPOLOGICAL and inst.graph.rotation is None:
        raise NoEmbedding("topological adjacency needs a rotation system")
    paths = enumerate_spaths(inst, max_paths)
    index = {p: k for k, p in enumerate(paths)}
    switch = SwitchTest(inst) if variant == TOPOLOGICAL else None
    adjacency = [
        [index[q] for q in reroute_neighbors(inst, p, variant, switch)] for p in paths
    ]
    return RerouteGraph(variant, paths, adjacency, index)


def oracle_decide(
    inst: LayeredInstance,
    P: Sequence[int],
    target: Target | Iterable[int],
    variant: str = UNRESTRICTED,
    sequence: bool = False,
    max_paths: int = DEFAULT_MAX_PATHS,
    graph: RerouteGraph | None = None,
) -> Verdict:
    """Breadth-first search from ``P`` for an S-path containing the target."""
    want = as_vertex_set(target)
    rg = graph or build_rerouting_graph(inst, variant, max_paths)
    start = rg.index[tuple(P)]
    parent = {start: None}
    queue = deque([start])
    found = None
    while queue:
        k = queue.popleft()
        if want <= set(rg.paths[k]):
            found = k
            break
        for j in rg.adjacency[k]:
            if j not in parent:
                parent[j] = k
                queue.append(j)
    diagnostics = {"paths": len(rg.paths), "explored": len(parent)}
    if found is None:
        return Verdict(False, diagnostics=diagnostics)
    seq = None
    if sequence:
        seq = []
        k = found
        while k is not None:
            seq.append(rg.paths[k])
            k = parent[k]
        seq.reverse()
    return Verdict(True, rg.paths[found], diagnostics, sequence=seq)


def reachable_sets(rg: RerouteGraph, P: Sequence[int]) -> list[SPath]:
    return [rg.paths[k] for k in rg.component(tuple(P))]


def check_sequence(inst: LayeredInstance, seq: Sequence[SPath], variant: str) -> bool:
    """Whether consecutive paths are single admissible rerouting steps."""
    switch = SwitchTest(inst) if variant == TOPOLOGICAL else None
    for p, q in zip(seq, seq[1:]):
        if not (inst.is_spath(p) and inst.is_spath(q)):
            return False
        diff = [j for j in range(len(p)) if p[j] != q[j]]
        if len(diff) != 1:
            return False
        j = diff[0]
        if not step_allowed(inst, variant, p[j - 1], p[j], q[j], p[j + 1], switch):
            return False
    return True


# -- materialized encodings ----------------------------------------------


@dataclass
class OracleEncoding:
    """Classes of the 'same layer-i vertex, connected without changing it' relation."""

    layer: int
    classes: list[frozenset[SPath]]
    labels: list[int]
    p: list[bool]
    q: list[bool]
    edges: set[frozenset[int]]


def prefixes(inst: LayeredInstance, i: int) -> list[SPath]:
    out = [(inst.s,)]
    for _ in range(i):
        out = [p + (w,) for p in out for w in sorted(inst.successors(p[-1]))]
    return out


def materialize_encoding(inst: LayeredInstance, P: Sequence[int], Q: Iterable[int], i: int) -> OracleEncoding:
    """Contract the P-component of the restricted rerouting graph of the truncated graph.

    The truncated graph keeps layers 0..i and joins t to all of layer i, so
    its S-paths are the layer-i prefixes of S-paths of the full graph.
    """
    g = inst.graph
    Qi = {v for v in Q if inst.layer_of.get(v, inst.d) <= i}
    Pi = tuple(P[: i + 1])
    nodes = prefixes(inst, i)
    index = {p: k for k, p in enumerate(nodes)}
    adj: list[list[tuple[int, int]]] = [[] for _ in nodes]
    for k, p in enumerate(nodes):
        for j in range(1, i + 1):
            a = p[j]
            for b in inst.layers[j]:
                if b == a or not g.has_edge(a, b):
                    continue
                if not g.has_edge(p[j - 1], b):
                    continue
                if j < i and not g.has_edge(b, p[j + 1]):
                    continue
                q = p[:j] + (b,) + p[j + 1:]
                adj[k].append((index[q], j))
    # component of P
    start = index[Pi]
    comp = {start}
    queue = deque([start])
    while queue:
        k = queue.popleft()
        for m, _ in adj[k]:
            if m not in comp:
                comp.add(m)
                queue.append(m)
    # classes: connected without touching layer i
    cls_of: dict[int, int] = {}
    classes: list[list[int]] = []
    for k in sorted(comp):
        if k in cls_of:
            continue
        c = len(classes)
        members = [k]
        cls_of[k] = c
        queue = deque([k])
        while queue:
            u = queue.popleft()
            for m, j in adj[u]:
                if j < i and m not in cls_of:
                    cls_of[m] = c
                    members.append(m)
                    queue.append(m)
        classes.append(members)
    edges = set()
    for k in comp:
        for m, j in adj[k]:
            if j == i:
                edges.add(frozenset((cls_of[k], cls_of[m])))
    return OracleEncoding(
        layer=i,
        classes=[frozenset(nodes[k] for k in members) for members in classes],
        labels=[nodes[members[0]][i] for members in classes],
        p=[start in members for members in classes],
        q=[any(Qi <= set(nodes[k]) for k in members) for members in classes],
        edges=edges,
    )
