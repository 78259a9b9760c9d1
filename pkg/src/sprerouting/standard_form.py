"""Topological rerouting as restricted rerouting in a face-completed graph.

Every face of a reduced plane instance climbs monotonically from a unique
lowest vertex to a unique highest one on both of its sides.  We draw a new
monotone path through each face between these two extremes and then, in
every resulting face, join the two vertices of each inner layer.  Restricted
steps of the result correspond to topological steps of the input, with new
vertices acting as stepping stones across 4-faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .encoding import DEFAULT_CAP, DpDiagnostics, dp_decide_rspr
from .errors import ExtremaNotUnique, InvariantViolation, NoEmbedding, NotReduced
from .graph import NEW, ORIGINAL, PlaneGraph, splice_after, trace_faces
from .instance import LayeredInstance, SPath, Verdict, build_layered_instance, is_subpath
from .reduction import cut_vertices, prune_to_spath_subgraph


def face_extrema(inst: LayeredInstance, face: Sequence[int]) -> tuple[int, int]:
    """The unique local minimum and local maximum (by distance from s) of a face walk."""
    dist = inst.dist_s
    n = len(face)
    lows, highs = [], []
    for j, v in enumerate(face):
        a, b = dist[face[j - 1]], dist[face[(j + 1) % n]]
        if a > dist[v] and b > dist[v]:
            lows.append(v)
        elif a < dist[v] and b < dist[v]:
            highs.append(v)
    if len(lows) != 1 or len(highs) != 1:
        raise ExtremaNotUnique(f"face {list(face)} has minima {lows} and maxima {highs}")
    return lows[0], highs[0]


@dataclass
class FaceRecord:
    walk: tuple[int, ...]
    low: int
    high: int
    inserted: tuple[int, ...]  # new vertices from low towards high


@dataclass
class StandardFormMap:
    graph: PlaneGraph
    faces: list[FaceRecord] = field(default_factory=list)
    layer_edges: list[tuple[int, int]] = field(default_factory=list)
    first_new: int = 0

    def is_new(self, v: int) -> bool:
        return self.graph.origin_of(v) == NEW

    def strip(self, path: Iterable[int]) -> list[int]:
        return [v for v in path if not self.is_new(v)]


def _require_reduced(inst: LayeredInstance) -> None:
    g = inst.graph
    if g.rotation is None:
        raise NoEmbedding("the transformation needs a rotation system")
    lo = inst.layer_of
    if len(lo) != g.vertex_count or any(abs(lo[u] - lo[v]) != 1 for u, v in g.edges()):
        raise NotReduced("some vertex or edge lies on no S-path")
    cuts = cut_vertices(inst)
    if cuts:
        raise NotReduced(f"cut vertices {cuts}")


def to_standard_form(inst: LayeredInstance) -> tuple[LayeredInstance, StandardFormMap]:
    """Apply both insertion steps; raises ``NotReduced`` on unsuitable input.

    Domination is not needed here: every face of a 2-connected graph is a
    simple cycle, so each layer edge joins a new vertex to an original one
    and no edge can be added twice.
    """
    _require_reduced(inst)
    if inst.d < 2:
        raise NotReduced("a single edge has no faces to fill")
    g = inst.graph
    dist = dict(inst.dist_s)
    adj = {v: set(ns) for v, ns in g.adjacency.items()}
    rot = {v: list(order) for v, order in g.rotation.items()}
    origin = {v: ORIGINAL for v in adj}
    next_id = max(adj) + 1
    first_new = next_id
    sf = StandardFormMap(g)

    def add_edge(a, b, anchor_a, anchor_b):
        adj[a].add(b)
        adj[b].add(a)
        if anchor_a is not None:
            splice_after(rot[a], anchor_a, b)
        if anchor_b is not None:
            splice_after(rot[b], anchor_b, a)

    # step 1: a monotone path of new vertices through every face
    for walk in g.faces.walks:
        low, high = face_extrema(inst, walk)
        # the face's corner at w sits right after its predecessor on the walk
        before = {w: walk[j - 1] for j, w in enumerate(walk)}
        span = dist[high] - dist[low]
        chain = list(range(next_id, next_id + span - 1))
        next_id += span - 1
        for k, x in enumerate(chain):
            adj[x] = set()
            rot[x] = []
            origin[x] = NEW
            dist[x] = dist[low] + k + 1
        path = [low] + chain + [high]
        for k in range(span):
            a, b = path[k], path[k + 1]
            adj[a].add(b)
            adj[b].add(a)
        # rotations: at the extremes splice into the face corner; a new vertex
        # sees its successor clockwise after its predecessor (any order at degree 2)
        splice_after(rot[low], before[low], path[1])
        splice_after(rot[high], before[high], path[-2])
        for k, x in enumerate(chain):
            rot[x] = [path[k], path[k + 2]]
        sf.faces.append(FaceRecord(tuple(walk), low, high, tuple(chain)))

    mid = PlaneGraph({v: tuple(sorted(ns)) for v, ns in adj.items()},
                     {v: tuple(r) for v, r in rot.items()}, dict(origin))
    faces = trace_faces(mid)

    # step 2: in every face join the two vertices of each inner layer
    for walk in faces.walks:
        by_layer: dict[int, list[int]] = {}
        for j, w in enumerate(walk):
            by_layer.setdefault(dist[w], []).append(j)
        top, bottom = max(by_layer), min(by_layer)
        for i in range(bottom + 1, top):
            if len(by_layer[i]) != 2:
                raise InvariantViolation(f"face {list(walk)} meets layer {i} {len(by_layer[i])} times")
            ja, jb = by_layer[i]
            a, b = walk[ja], walk[jb]
            if b in adj[a]:
                raise InvariantViolation(f"layer edge {a}-{b} added twice")
            add_edge(a, b, walk[ja - 1], walk[jb - 1])
            sf.layer_edges.append((min(a, b), max(a, b)))

    out = PlaneGraph({v: tuple(sorted(ns)) for v, ns in adj.items()},
                     {v: tuple(r) for v, r in rot.items()}, origin)
    trace_faces(out)  # Euler check on the final drawing
    sf.graph = out
    sf.first_new = first_new
    res = build_layered_instance(out, inst.s, inst.t)
    for v in inst.layer_of:
        if res.layer_of.get(v) != inst.layer_of[v]:
            raise InvariantViolation(f"vertex {v} changed layer")
    return res, sf


# -- verification ------------------------------------------------------------


@dataclass
class StandardFormReport:
    core: list[str] = field(default_factory=list)       # the three defining properties
    auxiliary: list[str] = field(default_factory=list)  # shape of transformed outputs

    @property
    def ok(self) -> bool:
        return not self.core

    def to_json(self) -> dict:
        return {"core": self.core, "auxiliary": self.auxiliary}


def _is_path(vertices: set[int], g: PlaneGraph) -> bool:
    if not vertices:
        return False
    degrees = {v: len(g.neighbor_set(v) & vertices) for v in vertices}
    if any(k > 2 for k in degrees.values()):
        return False
    if sum(degrees.values()) // 2 != len(vertices) - 1:
        return False
    start = next(iter(vertices))
    return len(g.bfs_distances(start, vertices)) == len(vertices)


def check_standard_form(inst: LayeredInstance) -> StandardFormReport:
    g = inst.graph
    rep = StandardFormReport()
    layer_sets = [set(layer) for layer in inst.layers]
    for i in range(1, inst.d):
        Li = layer_sets[i]
        for v in sorted(Li):
            inner = g.neighbor_set(v) & Li
            if len(inner) > 2:
                rep.core.append(f"(i) vertex {v} has {len(inner)} neighbors in layer {i}")
            if len(inner) != 2:
                rep.auxiliary.append(f"vertex {v} has {len(inner)} layer edges, not 2")
            below = set(g.neighbor_set(v) & layer_sets[i - 1])
            if not _is_path(below, g):
                rep.core.append(f"(ii) previous-layer neighbors of {v} do not induce a path")
            for w in sorted(inner):
                if v < w:
                    common = g.neighbor_set(v) & g.neighbor_set(w) & layer_sets[i - 1]
                    if len(common) > 1:
                        rep.core.append(f"(iii) layer edge {v}-{w} has {len(common)} common lower neighbors")
        if not _is_single_cycle(Li, g):
            rep.auxiliary.append(f"layer {i} does not induce a single cycle")
    return rep


def _is_single_cycle(vertices: set[int], g: PlaneGraph) -> bool:
    if len(vertices) < 3:
        return False
    if any(len(g.neighbor_set(v) & vertices) != 2 for v in vertices):
        return False
    start = next(iter(vertices))
    return len(g.bfs_distances(start, vertices)) == len(vertices)


# -- deciding topological reachability ----------------------------------------


def _back_map(inst: LayeredInstance, sf: StandardFormMap, witness: SPath) -> SPath:
    """Replace each new vertex by an original vertex adjacent to both path neighbors."""
    g = sf.graph
    out = list(witness)
    for i, v in enumerate(out):
        if not sf.is_new(v):
            continue
        prev, nxt = out[i - 1], witness[i + 1]
        choices = [b for b in sorted(g.neighbor_set(v))
                   if not sf.is_new(b) and inst.layer_of.get(b) == i
                   and inst.graph.has_edge(prev, b) and inst.graph.has_edge(b, nxt)]
        if not choices:
            raise InvariantViolation(f"new vertex {v} in the witness has no original stand-in")
        out[i] = choices[0]
    return tuple(out)


def decide_tspr(
    inst: LayeredInstance,
    P: Sequence[int],
    Q: Iterable[int],
    cap: int = DEFAULT_CAP,
    diagnostics: DpDiagnostics | None = None,
) -> Verdict:
    """Topological reachability of ``Q`` from ``P`` on a reduced plane instance.

    Vertices and edges on no S-path are dropped first; cut vertices are
    rejected with ``NotReduced``.
    """
    P = tuple(P)
    inst = prune_to_spath_subgraph(inst)
    Q = frozenset(Q) - {inst.s, inst.t}
    if not inst.is_spath(P):
        raise InvariantViolation("P is not an S-path")
    if not is_subpath(inst, Q):
        return Verdict(False, diagnostics={"reason": "target is not an S-subpath"})
    if Q <= set(P):
        return Verdict(True, P)
    if inst.d <= 1:  # pragma: no cover - the only S-path is P
        return Verdict(Q <= set(P), P if Q <= set(P) else None)
    big, sf = to_standard_form(inst)
    verdict, diag = dp_decide_rspr(big, P, Q, cap)
    if diagnostics is not None:
        diagnostics.layers.extend(diag.layers)
        diagnostics.allocated += diag.allocated
    info = {"dp": diag.to_json(), "new_vertices": big.graph.vertex_count - inst.graph.vertex_count}
    if not verdict.reachable:
        return Verdict(False, diagnostics=info)
    witness = _back_map(inst, sf, verdict.witness)
    if not inst.is_spath(witness) or not Q <= set(witness):
        raise InvariantViolation("mapped-back witness is not an S-path containing the target")
    return Verdict(True, witness, info)
