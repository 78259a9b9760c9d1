"""Dynamic programming over contracted restricted rerouting graphs.

Layer by layer we keep the encoding of the truncated instance: one node per
class of S-path prefixes that share their last vertex and are connected by
restricted steps not touching it, restricted to the component of ``P``.
Only the labels are stored, never the prefix sets themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import EncodingCapExceeded, InvariantViolation, LowDegreeViolated
from .instance import LayeredInstance, SPath, Verdict

DEFAULT_CAP = 10**6


@dataclass
class EncNode:
    l: int
    p: bool
    q: bool
    rep: SPath | None = None
    # indices of the nodes of the previous encoding this node was built from
    members: tuple[int, ...] = ()


@dataclass
class Encoding:
    layer: int
    nodes: list[EncNode]
    adjacency: list[set[int]]

    def __len__(self) -> int:
        return len(self.nodes)

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((a, b)) for a, nb in enumerate(self.adjacency) for b in nb}

    def label_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for node in self.nodes:
            counts[node.l] = counts.get(node.l, 0) + 1
        return counts

    def max_multiplicity(self) -> int:
        return max(self.label_counts().values(), default=0)

    def shape(self) -> str:
        """'path', 'cycle' or 'other' (a single node counts as a path)."""
        n = len(self.nodes)
        degrees = [len(a) for a in self.adjacency]
        if any(k > 2 for k in degrees):
            return "other"
        m = sum(degrees) // 2
        if m == n - 1:
            return "path"
        if m == n and n >= 3:
            return "cycle"
        return "other"

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in self.adjacency[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return len(seen) == len(self.nodes)

    def is_locally_injective(self) -> bool:
        for nb in self.adjacency:
            labels = [self.nodes[b].l for b in nb]
            if len(labels) != len(set(labels)):
                return False
        return True


@dataclass
class DpDiagnostics:
    layers: list[dict] = field(default_factory=list)
    allocated: int = 0

    def record(self, enc: Encoding, candidates: int) -> None:
        self.layers.append({
            "i": enc.layer,
            "nodes": len(enc),
            "candidates": candidates,
            "max_label_multiplicity": enc.max_multiplicity(),
            "shape": enc.shape(),
        })

    @property
    def max_nodes(self) -> int:
        return max((row["nodes"] for row in self.layers), default=0)

    @property
    def max_candidates(self) -> int:
        return max((row["candidates"] for row in self.layers), default=0)

    def to_json(self) -> dict:
        return {"layers": self.layers, "allocated": self.allocated}


def initial_encoding(inst: LayeredInstance) -> Encoding:
    return Encoding(0, [EncNode(inst.s, True, True, (inst.s,))], [set()])


def advance_encoding(
    inst: LayeredInstance,
    enc: Encoding,
    P: Sequence[int],
    Q: Iterable[int],
    cap: int = DEFAULT_CAP,
) -> tuple[Encoding, int]:
    """Encoding of the next truncation; also returns the number of candidate nodes."""
    i = enc.layer
    g = inst.graph
    Q = set(Q)
    P_next = P[i + 1]
    q_next = {v for v in Q if inst.layer_of.get(v) == i + 1}
    by_label: dict[int, list[int]] = {}
    for x, node in enumerate(enc.nodes):
        by_label.setdefault(node.l, []).append(x)

    cands: list[EncNode] = []
    containing: list[list[int]] = [[] for _ in enc.nodes]  # node x -> candidates with x in C_a
    for v in inst.layers[i + 1]:
        xs = [x for u in inst.predecessors(v) for x in by_label.get(u, ())]
        if not xs:
            continue
        allowed = set(xs)
        seen: set[int] = set()
        for root in sorted(xs):
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                x = stack.pop()
                for y in enc.adjacency[x]:
                    if y in allowed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comp.sort()
            a = len(cands)
            p = v == P_next and any(enc.nodes[x].p for x in comp)
            q_ok = not q_next or q_next == {v}
            qx = [x for x in comp if enc.nodes[x].q] if q_ok else []
            rep = enc.nodes[qx[0]].rep + (v,) if qx else None
            cands.append(EncNode(v, p, bool(qx), rep, tuple(comp)))
            for x in comp:
                containing[x].append(a)
            if len(cands) > cap:
                raise EncodingCapExceeded(i + 1, len(cands), cap)

    cadj: list[set[int]] = [set() for _ in cands]
    for group in containing:
        for j, a in enumerate(group):
            la = cands[a].l
            for b in group[j + 1:]:
                if g.has_edge(la, cands[b].l):
                    cadj[a].add(b)
                    cadj[b].add(a)

    p_nodes = [a for a, c in enumerate(cands) if c.p]
    if len(p_nodes) != 1:
        raise InvariantViolation(f"layer {i + 1}: {len(p_nodes)} nodes carry the P label")
    keep = {p_nodes[0]}
    stack = [p_nodes[0]]
    while stack:
        a = stack.pop()
        for b in cadj[a]:
            if b not in keep:
                keep.add(b)
                stack.append(b)
    order = sorted(keep)
    renum = {a: k for k, a in enumerate(order)}
    nodes = [cands[a] for a in order]
    adjacency = [{renum[b] for b in cadj[a]} for a in order]
    return Encoding(i + 1, nodes, adjacency), len(cands)


def iter_encodings(
    inst: LayeredInstance,
    P: Sequence[int],
    Q: Iterable[int],
    cap: int = DEFAULT_CAP,
    diagnostics: DpDiagnostics | None = None,
) -> Iterator[Encoding]:
    """Yield the encodings for layers 0..d-1."""
    Q = frozenset(Q)
    enc = initial_encoding(inst)
    if diagnostics is not None:
        diagnostics.record(enc, 1)
        diagnostics.allocated += 1
    yield enc
    for _ in range(inst.d - 1):
        enc, candidates = advance_encoding(inst, enc, P, Q, cap)
        if diagnostics is not None:
            diagnostics.record(enc, candidates)
            diagnostics.allocated += candidates
        yield enc


def dp_decide_rspr(
    inst: LayeredInstance,
    P: Sequence[int],
    Q: Iterable[int],
    cap: int = DEFAULT_CAP,
) -> tuple[Verdict, DpDiagnostics]:
    """Decide restricted reachability of ``Q`` from ``P``.

    The witness is the representative S-path of a final node with the ``q``
    label.  Raises ``EncodingCapExceeded`` when a layer needs more than
    ``cap`` candidate nodes.
    """
    P = tuple(P)
    Q = frozenset(Q)
    diag = DpDiagnostics()
    last = None
    for last in iter_encodings(inst, P, Q, cap, diag):
        pass
    hits = [node for node in last.nodes if node.q]
    # the final truncation has t adjacent to the whole last inner layer
    witness = hits[0].rep + (inst.t,) if hits else None
    if inst.d == 0:  # pragma: no cover - terminals are distinct
        witness = (inst.s,)
    verdict = Verdict(bool(hits), witness, {"dp": diag.to_json()})
    return verdict, diag


def remove_useless_edges(inst: LayeredInstance) -> LayeredInstance:
    """Drop layer edges whose ends share no neighbor in the previous layer."""
    g = inst.graph
    useless = []
    for u, v in inst.layer_edges():
        pu = set(inst.predecessors(u))
        if not pu.intersection(inst.predecessors(v)):
            useless.append((u, v))
    if not useless:
        return inst
    return inst.with_graph(g.without_edges(useless))


def check_low_degree(inst: LayeredInstance) -> list[int]:
    """Vertices with more than two neighbors in the previous or the next layer."""
    bad = []
    for v in inst.layer_of:
        if v in (inst.s, inst.t):
            continue
        if len(inst.predecessors(v)) > 2 or len(inst.successors(v)) > 2:
            bad.append(v)
    return sorted(bad)


def dp_decide_low_degree(
    inst: LayeredInstance,
    P: Sequence[int],
    Q: Iterable[int],
) -> tuple[Verdict, DpDiagnostics]:
    bad = check_low_degree(inst)
    if bad:
        raise LowDegreeViolated(f"vertices {bad} have more than two neighbors in a neighboring layer")
    inst = remove_useless_edges(inst)
    verdict, diag = dp_decide_rspr(inst, P, Q)
    for row in diag.layers:
        if row["i"] >= 1 and row["max_label_multiplicity"] > row["i"]:
            raise InvariantViolation(f"layer {row['i']}: label multiplicity exceeds the layer index")
    return verdict, diag
