"""Simple undirected graphs with an optional rotation system.

Vertex ids are arbitrary non-negative integers; subgraphs keep the ids of
their parent so that witnesses never need renumbering.  The rotation, when
present, lists the neighbors of every vertex in clockwise order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import EmbeddingInvalid, GraphError, NoEmbedding, NotACycle

ORIGINAL = "original"
NEW = "new"

Edge = tuple[int, int]
Dart = tuple[int, int]


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    adjacency: Mapping[int, tuple[int, ...]]
    rotation: Mapping[int, tuple[int, ...]] | None = None
    origin: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        for v, nbrs in self.adjacency.items():
            if v in nbrs:
                raise GraphError(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"parallel edges at vertex {v}")
            for w in nbrs:
                if w not in self.adjacency or v not in self._sets[w]:
                    raise GraphError(f"edge {v}-{w} is not symmetric")
        if self.rotation is not None:
            if set(self.rotation) != set(self.adjacency):
                raise GraphError("rotation does not cover the vertex set")
            for v, order in self.rotation.items():
                if len(order) != len(self.adjacency[v]) or set(order) != self._sets[v]:
                    raise GraphError(f"rotation at {v} is not a permutation of its neighbors")

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        vertices: int | Iterable[int],
        edges: Iterable[Edge],
        rotation: Mapping[int, Sequence[int]] | None = None,
        origin: Mapping[int, str] | None = None,
    ) -> "PlaneGraph":
        vs = range(vertices) if isinstance(vertices, int) else vertices
        nbrs: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in nbrs or v not in nbrs:
                raise GraphError(f"edge {u}-{v} uses an unknown vertex")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = {v: tuple(sorted(ns)) for v, ns in sorted(nbrs.items())}
        rot = None
        if rotation is not None:
            rot = {v: tuple(rotation.get(v, ())) for v in adjacency}
            # degree <= 2 vertices have a unique cyclic order; allow omitting them
            for v in adjacency:
                if not rot[v] and len(adjacency[v]) <= 2:
                    rot[v] = adjacency[v]
        return cls(adjacency, rot, dict(origin or {}))

    # -- basic queries ------------------------------------------------

    @cached_property
    def _sets(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(ns) for v, ns in self.adjacency.items()}

    @property
    def vertices(self) -> list[int]:
        return list(self.adjacency)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.adjacency.values()) // 2

    def edges(self) -> list[Edge]:
        return [(u, v) for u, ns in self.adjacency.items() for v in ns if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets.get(u, ())

    def __contains__(self, v: int) -> bool:
        return v in self.adjacency

    def origin_of(self, v: int) -> str:
        return self.origin.get(v, ORIGINAL)

    @property
    def has_rotation(self) -> bool:
        return self.rotation is not None

    # -- derived graphs -----------------------------------------------

    def induced(self, keep: Iterable[int]) -> "PlaneGraph":
        keep = set(keep)
        adjacency = {
            v: tuple(w for w in ns if w in keep) for v, ns in self.adjacency.items() if v in keep
        }
        rotation = None
        if self.rotation is not None:
            rotation = {v: tuple(w for w in self.rotation[v] if w in keep) for v in adjacency}
        origin = {v: o for v, o in self.origin.items() if v in keep}
        return PlaneGraph(adjacency, rotation, origin)

    def without_edges(self, drop: Iterable[Edge]) -> "PlaneGraph":
        gone = {frozenset(e) for e in drop}
        if not gone:
            return self

        def keep(v, w):
            return frozenset((v, w)) not in gone

        adjacency = {v: tuple(w for w in ns if keep(v, w)) for v, ns in self.adjacency.items()}
        rotation = None
        if self.rotation is not None:
            rotation = {v: tuple(w for w in r if keep(v, w)) for v, r in self.rotation.items()}
        return PlaneGraph(adjacency, rotation, dict(self.origin))

    def with_edges(self, extra: Iterable[Edge]) -> "PlaneGraph":
        """Add edges; the result carries no embedding."""
        nbrs = {v: set(ns) for v, ns in self.adjacency.items()}
        for u, v in extra:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = {v: tuple(sorted(ns)) for v, ns in nbrs.items()}
        return PlaneGraph(adjacency, None, dict(self.origin))

    def without_rotation(self) -> "PlaneGraph":
        return PlaneGraph(self.adjacency, None, dict(self.origin))

    # -- traversal ----------------------------------------------------

    def bfs_distances(self, source: int, allowed: frozenset[int] | set[int] | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def component_of(self, v: int) -> set[int]:
        return set(self.bfs_distances(v))

    def is_connected(self) -> bool:
        if not self.adjacency:
            return True
        return len(self.component_of(next(iter(self.adjacency)))) == self.vertex_count

    @cached_property
    def faces(self) -> "FaceSet":
        return trace_faces(self)


@dataclass(frozen=True)
class FaceSet:
    """Closed boundary walks of an embedded connected graph.

    ``walks[f]`` lists the vertices met along face ``f``; the darts of the
    face are ``(walk[j], walk[j+1])`` cyclically.  ``dart_face`` maps every
    directed edge to the face on its walk.
    """

    walks: tuple[tuple[int, ...], ...]
    dart_face: Mapping[Dart, int]

    def __len__(self) -> int:
        return len(self.walks)

    def face_of(self, u: int, v: int) -> int:
        return self.dart_face[(u, v)]

    def faces_at(self, v: int, graph: PlaneGraph) -> set[int]:
        return {self.dart_face[(v, w)] for w in graph.neighbors(v)}


def next_dart(graph: PlaneGraph, u: int, v: int) -> Dart:
    """Successor of dart u->v on its face: leave v by the clockwise successor of u.

    The face therefore occupies the corner at ``v`` between ``u`` and that
    successor, which is where ``splice_after`` inserts an edge drawn in it.
    """
    order = graph.rotation[v]
    i = order.index(u)
    return v, order[(i + 1) % len(order)]


def trace_faces(graph: PlaneGraph) -> FaceSet:
    if graph.rotation is None:
        raise NoEmbedding("graph has no rotation system")
    if not graph.is_connected():
        raise EmbeddingInvalid("face tracing needs a connected graph")
    position = {v: {w: i for i, w in enumerate(order)} for v, order in graph.rotation.items()}
    dart_face: dict[Dart, int] = {}
    walks = []
    for u in graph.adjacency:
        for v in graph.rotation[u]:
            if (u, v) in dart_face:
                continue
            f = len(walks)
            walk = []
            a, b = u, v
            while (a, b) not in dart_face:
                dart_face[(a, b)] = f
                walk.append(a)
                order = graph.rotation[b]
                a, b = b, order[(position[b][a] + 1) % len(order)]
            if (a, b) != (u, v):
                raise EmbeddingInvalid("rotation system does not define a permutation of darts")
            walks.append(tuple(walk))
    n, e = graph.vertex_count, graph.edge_count
    f = len(walks) if e else 1
    if n - e + f != 2:
        raise EmbeddingInvalid(f"Euler check failed: {n} - {e} + {f} != 2")
    return FaceSet(tuple(walks), dart_face)


def euler_characteristic(graph: PlaneGraph) -> int:
    faces = trace_faces(graph)
    return graph.vertex_count - graph.edge_count + len(faces)


def check_cycle(graph: PlaneGraph, cycle: Sequence[int]) -> None:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACycle(f"{list(cycle)} is not a simple cycle")
    for j, v in enumerate(cycle):
        w = cycle[(j + 1) % len(cycle)]
        if not graph.has_edge(v, w):
            raise NotACycle(f"{v}-{w} is not an edge")


def separates(graph: PlaneGraph, cycle: Sequence[int], s: int, t: int) -> bool:
    """Whether the closed curve of ``cycle`` puts ``s`` and ``t`` in different regions.

    Faces are merged whenever they share an edge that is not on the cycle;
    the two regions of the curve are then the two resulting classes.  The
    caller guarantees that ``cycle`` is a cycle avoiding ``s`` and ``t``.
    """
    if graph.rotation is None:
        raise NoEmbedding("separation test needs a rotation system")
    comp = graph.component_of(s)
    if t not in comp:
        return True
    if len(comp) != graph.vertex_count:
        graph = graph.induced(comp)
    faces = graph.faces
    parent = list(range(len(faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    on_cycle = {frozenset((cycle[j], cycle[(j + 1) % len(cycle)])) for j in range(len(cycle))}
    for u, v in graph.edges():
        if frozenset((u, v)) not in on_cycle:
            a, b = find(faces.face_of(u, v)), find(faces.face_of(v, u))
            if a != b:
                parent[a] = b
    side_s = {find(f) for f in faces.faces_at(s, graph)}
    side_t = {find(f) for f in faces.faces_at(t, graph)}
    if len(side_s) != 1 or len(side_t) != 1:
        raise EmbeddingInvalid("terminal touches both regions of a cycle")
    return side_s != side_t


def splice_after(order: list[int], anchor: int, new: int) -> None:
    """Insert ``new`` right after ``anchor`` in a clockwise rotation list."""
    order.insert(order.index(anchor) + 1, new)
