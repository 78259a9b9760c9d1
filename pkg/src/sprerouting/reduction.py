"""Reduction of unrestricted instances to independent reduced parts.

Three rules, applied in this order: drop everything that lies on no
S-path, delete neighborhood-dominated vertices, then cut the instance at
its cut vertices.  Every part keeps the vertex ids of the input so that
witnesses only need gluing and a few substitutions to be lifted back.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import InvariantViolation, MissingChildWitness
from .graph import PlaneGraph
from .instance import LayeredInstance, SPath, build_layered_instance


def prune_to_spath_subgraph(inst: LayeredInstance) -> LayeredInstance:
    """Keep exactly the vertices and edges that lie on some S-path."""
    g = inst.graph
    lo = inst.layer_of
    keep = set(lo)
    drop = [(u, v) for u, v in g.edges()
            if u in keep and v in keep and abs(lo[u] - lo[v]) != 1]
    if len(keep) == g.vertex_count and not drop:
        return inst
    h = g.induced(keep).without_edges(drop)
    return build_layered_instance(h, inst.s, inst.t)


# -- neighborhood domination ---------------------------------------------


def _protected(inst: LayeredInstance, Q: frozenset[int], z: int) -> bool:
    """Whether deleting ``z`` could change the answer for target ``Q``.

    Swapping ``z`` for its dominator is harmless when ``z`` is not in the
    target, or when the target already pins both neighbors of ``z`` on
    the path (then the swap is reversible on any witness).
    """
    if z not in Q:
        return False
    i = inst.layer_of[z]
    pinned = {inst.layer_of[v] for v in Q if v in inst.layer_of} | {0, inst.d}
    return not (i - 1 in pinned and i + 1 in pinned)


def _dominator(g: PlaneGraph, z: int, protected) -> int | None:
    """Smallest z' with N(z) ⊆ N(z'); twins only count when z' < z or z' is protected."""
    nz = g.neighbor_set(z)
    if not nz:
        return None
    pivot = min(nz, key=lambda u: (len(g.neighbors(u)), u))
    for w in g.neighbors(pivot):
        if w == z or not nz <= g.neighbor_set(w):
            continue
        if len(g.neighbors(w)) == len(nz) and w > z and not protected(w):
            continue
        return w
    return None


def remove_dominated_vertex(
    inst: LayeredInstance, P: Sequence[int], Q: Iterable[int]
) -> tuple[LayeredInstance, SPath, frozenset[int]] | None:
    """Apply one domination deletion (smallest deletable id), or ``None``."""
    Q = frozenset(Q)
    g = inst.graph
    for z in sorted(inst.layer_of):
        if z in (inst.s, inst.t) or _protected(inst, Q, z):
            continue
        w = _dominator(g, z, lambda v: _protected(inst, Q, v))
        if w is not None:
            child = inst.with_graph(g.induced(set(g.vertices) - {z}))
            return child, _swap(P, z, w), frozenset(w if v == z else v for v in Q)
    return None


def _swap(path: Sequence[int], old: int, new: int) -> SPath:
    return tuple(new if v == old else v for v in path)


def _remove_all_dominated(inst, P, Q, trace):
    """Exhaustive domination deletion with a lazy heap of candidates.

    Deleting z only shrinks the neighborhoods of N(z), so only those
    vertices can become deletable afterwards.
    """
    g = inst.graph
    alive = set(g.vertices)
    nbrs = {v: set(g.neighbors(v)) for v in alive}
    terminals = {inst.s, inst.t}
    P = list(P)
    Q = set(Q)
    pos_in_P = {v: k for k, v in enumerate(P)}

    def protected(v):
        return _protected(inst, Q, v)

    def dominator(z):
        nz = nbrs[z]
        if not nz:
            return None
        pivot = min(nz, key=lambda u: (len(nbrs[u]), u))
        best = None
        for w in nbrs[pivot]:
            if w == z or (best is not None and w > best) or not nz <= nbrs[w]:
                continue
            if len(nbrs[w]) == len(nz) and w > z and not protected(w):
                continue
            best = w
        return best

    heap = [v for v in alive if v not in terminals]
    heapq.heapify(heap)
    queued = set(heap)
    while heap:
        z = heapq.heappop(heap)
        queued.discard(z)
        if z not in alive or protected(z):
            continue
        w = dominator(z)
        if w is None:
            continue
        restore = z in Q
        trace.replacements.append((z, w, restore))
        alive.discard(z)
        for u in nbrs.pop(z):
            nbrs[u].discard(z)
            if u not in terminals and u not in queued:
                heapq.heappush(heap, u)
                queued.add(u)
        if z in pos_in_P:
            k = pos_in_P.pop(z)
            P[k] = w
            pos_in_P[w] = k
        if restore:
            Q.discard(z)
            Q.add(w)
            # w may now shield a smaller twin from being kept
            for u in nbrs[w]:
                for v in nbrs[u]:
                    if v not in terminals and v not in queued:
                        heapq.heappush(heap, v)
                        queued.add(v)
    if len(alive) == g.vertex_count:
        return inst, tuple(P), frozenset(Q)
    return inst.with_graph(g.induced(alive)), tuple(P), frozenset(Q)


# -- cut vertices ----------------------------------------------------------


def cut_vertices(inst: LayeredInstance) -> list[int]:
    """Cut vertices of an instance in which everything lies on an S-path.

    There a vertex separates the graph exactly when it is alone in its layer.
    """
    return [layer[0] for layer in inst.layers[1:-1] if len(layer) == 1]


def _segment(inst: LayeredInstance, lo: int, hi: int) -> LayeredInstance:
    keep = [v for layer in inst.layers[lo:hi + 1] for v in layer]
    return build_layered_instance(inst.graph.induced(keep), inst.layers[lo][0], inst.layers[hi][0])


def split_at_cut_vertex(inst: LayeredInstance, P: Sequence[int], Q: Iterable[int]):
    """Split at the first cut vertex v into the sv- and vt-parts, or ``None``."""
    cuts = cut_vertices(inst)
    if not cuts:
        return None
    Q = frozenset(Q)
    i = inst.layer_of[cuts[0]]
    left, right = _segment(inst, 0, i), _segment(inst, i, inst.d)
    return (
        (left, tuple(P[: i + 1]), frozenset(v for v in Q if v in left.layer_of)),
        (right, tuple(P[i:]), frozenset(v for v in Q if v in right.layer_of)),
    )


# -- the whole pipeline -----------------------------------------------------


@dataclass
class ReducedPart:
    inst: LayeredInstance
    P: SPath
    Q: frozenset[int]

    @property
    def trivial(self) -> bool:
        """A single edge: its only S-path is ``P`` and it contains ``Q``."""
        return self.inst.d <= 1


@dataclass
class ReductionTrace:
    pruned_vertices: int = 0
    pruned_edges: int = 0
    # (deleted z, dominator z', whether z was in the target)
    replacements: list[tuple[int, int, bool]] = field(default_factory=list)
    cuts: list[int] = field(default_factory=list)
    parts: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "pruned_vertices": self.pruned_vertices,
            "pruned_edges": self.pruned_edges,
            "replacements": [{"deleted": z, "dominator": w, "in_target": r}
                             for z, w, r in self.replacements],
            "cuts": self.cuts,
            "parts": [list(p) for p in self.parts],
        }


@dataclass
class Reduction:
    parts: list[ReducedPart]
    trace: ReductionTrace
    P: SPath  # P after the domination deletions
    Q: frozenset[int]


def reduce_instance(inst: LayeredInstance, P: Sequence[int], Q: Iterable[int]) -> Reduction:
    """Reduce an unrestricted instance; the answer is the AND over the parts.

    A dominated vertex that belongs to the target is kept unless the target
    also fixes both of its path neighbors (see ``_protected``).
    """
    trace = ReductionTrace()
    pruned = prune_to_spath_subgraph(inst)
    trace.pruned_vertices = inst.graph.vertex_count - pruned.graph.vertex_count
    trace.pruned_edges = inst.graph.edge_count - pruned.graph.edge_count
    Q = frozenset(v for v in Q if v in pruned.layer_of)
    cur, P2, Q2 = _remove_all_dominated(pruned, tuple(P), Q, trace)
    bounds = [0] + [cur.layer_of[v] for v in cut_vertices(cur)] + [cur.d]
    trace.cuts = [cur.layers[i][0] for i in bounds[1:-1]]
    parts = []
    for lo, hi in zip(bounds, bounds[1:]):
        sub = cur if (lo, hi) == (0, cur.d) else _segment(cur, lo, hi)
        trace.parts.append((sub.s, sub.t))
        parts.append(ReducedPart(sub, tuple(P2[lo:hi + 1]), frozenset(v for v in Q2 if v in sub.layer_of)))
    return Reduction(parts, trace, P2, Q2)


def lift_witness(trace: ReductionTrace, child_witnesses: Sequence[SPath | None]) -> SPath:
    """Glue part witnesses at the cut vertices and undo the substitutions."""
    if len(child_witnesses) != len(trace.parts) or any(w is None for w in child_witnesses):
        raise MissingChildWitness("every part needs a witness to lift")
    path = list(child_witnesses[0])
    for w in child_witnesses[1:]:
        if path[-1] != w[0]:
            raise InvariantViolation("part witnesses do not meet at the cut vertex")
        path.extend(w[1:])
    for z, w, restore in reversed(trace.replacements):
        if restore:
            if w not in path:
                raise InvariantViolation(f"witness lost dominator {w} of target vertex {z}")
            path[path.index(w)] = z
    return tuple(path)


def complete_layers(inst: LayeredInstance) -> LayeredInstance:
    """Join every pair of vertices in each inner layer; drops the embedding.

    Unrestricted steps in the input are exactly restricted steps in the result.
    """
    extra = [(u, v) for layer in inst.layers[1:-1] for j, u in enumerate(layer) for v in layer[j + 1:]
             if not inst.graph.has_edge(u, v)]
    g = inst.graph.with_edges(extra) if extra else inst.graph.without_rotation()
    return build_layered_instance(g, inst.s, inst.t)


def reducedness_report(inst: LayeredInstance, dominated: bool = True) -> list[str]:
    """Violations of: everything on an S-path, no cut vertex, no dominated vertex."""
    g = inst.graph
    lo = inst.layer_of
    report = [f"vertex {v} lies on no S-path" for v in g.vertices if v not in lo]
    report += [f"edge {u}-{v} lies on no S-path" for u, v in g.edges()
               if u in lo and v in lo and abs(lo[u] - lo[v]) != 1]
    if report:
        return report
    report += [f"cut vertex {v}" for v in cut_vertices(inst)]
    if dominated:
        for z in sorted(lo):
            if z in (inst.s, inst.t):
                continue
            w = _dominator(g, z, lambda v: True)
            if w is not None:
                report.append(f"vertex {z} is dominated by {w}")
    return report
