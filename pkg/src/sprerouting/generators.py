"""Deterministic instance families.

Every generator returns a ``SprgDocument`` carrying an embedding, a start
path and a target; the same parameters and seed always give the same file.
"""

from __future__ import annotations

import random

import networkx as nx

from .errors import BadParameters
from .graph import PlaneGraph
from .instance import LayeredInstance, SPath, Target, build_layered_instance
from .reference import rotation_from_coords
from .sprg import SprgDocument


def first_spath(inst: LayeredInstance, last: bool = False) -> SPath:
    """Lexicographically smallest (or largest) S-path."""
    # walk forward choosing the extreme successor that still leads to t
    path = [inst.s]
    for _ in range(inst.d):
        succ = sorted(inst.successors(path[-1]), reverse=last)
        path.append(succ[0])
    return tuple(path)


def random_spath(inst: LayeredInstance, rng: random.Random) -> SPath:
    path = [inst.s]
    for _ in range(inst.d):
        path.append(rng.choice(sorted(inst.successors(path[-1]))))
    return tuple(path)


def _document(g: PlaneGraph, s: int, t: int, P: SPath, target: Target, variant: str) -> SprgDocument:
    return SprgDocument(g, s, t, P, target, variant)


def hex_family(levels: int) -> SprgDocument:
    """An even cycle through s and t: two internally disjoint S-paths."""
    if levels < 1:
        raise BadParameters("hex needs levels >= 1")
    m = levels + 1
    n = 2 * m + 2
    g = PlaneGraph.from_edges(n, [(v, (v + 1) % n) for v in range(n)], {})
    t = m + 1
    P = tuple(range(t + 1))
    Q = (0,) + tuple(range(n - 1, t - 1, -1))
    return _document(g, 0, t, P, Target.path(Q), "SPR")


def grid(rows: int, cols: int) -> SprgDocument:
    """A rows x cols lattice from corner to corner."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise BadParameters("grid needs rows, cols >= 1 and at least two vertices")
    vid = lambda i, j: i * cols + j  # noqa: E731
    edges = [(vid(i, j), vid(i, j + 1)) for i in range(rows) for j in range(cols - 1)]
    edges += [(vid(i, j), vid(i + 1, j)) for i in range(rows - 1) for j in range(cols)]
    coords = {vid(i, j): (float(j), float(-i)) for i in range(rows) for j in range(cols)}
    g = PlaneGraph.from_edges(rows * cols, edges, rotation_from_coords(coords, edges))
    s, t = 0, rows * cols - 1
    inst = build_layered_instance(g, s, t)
    return _document(g, s, t, first_spath(inst), Target.path(first_spath(inst, last=True)), "SPR")


# One block of the chain: layer A = {A0, A1} with edge A0-A1, layer
# B = {B0, B1, B2} with edges B0-B2, B1-B2.  The non-adjacent twins B0, B1
# together with A1 and the next block's A0 form a separating 4-cycle.
_WIDTHS = (2, 3)
_A_TO_B = ((0, 2), (1, 0), (1, 1), (1, 2))
_B_TO_NEXT_A = ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0))
_INTRA = (((0, 1),), ((0, 2), (1, 2)))


def switch_chain(k: int) -> SprgDocument:
    """k blocks in series; the restricted encoding grows like 2^k."""
    if k < 1:
        raise BadParameters("switch_chain needs k >= 1")
    ids = {}
    n = 1
    for blk in range(k):
        for layer, width in enumerate(_WIDTHS):
            for a in range(width):
                ids[blk, layer, a] = n
                n += 1
    s, t = 0, n
    edges = [(s, ids[0, 0, a]) for a in range(_WIDTHS[0])]
    edges += [(ids[k - 1, 1, a], t) for a in range(_WIDTHS[1])]
    for blk in range(k):
        for layer in (0, 1):
            edges += [(ids[blk, layer, a], ids[blk, layer, b]) for a, b in _INTRA[layer]]
        edges += [(ids[blk, 0, a], ids[blk, 1, b]) for a, b in _A_TO_B]
        if blk + 1 < k:
            edges += [(ids[blk, 1, a], ids[blk + 1, 0, b]) for a, b in _B_TO_NEXT_A]
    g = _embed(n + 1, edges)
    inst = build_layered_instance(g, s, t)
    return _document(g, s, t, first_spath(inst), Target.path(first_spath(inst, last=True)), "SPR")


def _embed(n: int, edges) -> PlaneGraph:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    ok, emb = nx.check_planarity(G)
    if not ok:  # pragma: no cover - generators only build planar graphs
        raise BadParameters("generated graph is not planar")
    rot = {v: tuple(emb.neighbors_cw_order(v)) for v in G}
    return PlaneGraph.from_edges(n, edges, rot)


def random_layered(n: int, d: int, seed: int = 0, extra: int | None = None,
                   layer_edges: int = 0) -> SprgDocument:
    """A random plane layered graph with ``n`` vertices and distance ``d``.

    Edges are inserted one at a time and kept only if the graph stays
    planar.  First every vertex gets a predecessor and a successor, so all
    vertices lie on S-paths; then ``extra`` further edges between
    consecutive layers and ``layer_edges`` edges inside layers are tried.
    """
    if d < 1 or n < d + 1 or (d == 1 and n != 2):
        raise BadParameters("random_layered needs d >= 1 and n >= d + 1 (n = 2 when d = 1)")
    rng = random.Random(seed)
    sizes = [1] * (d + 1)
    for _ in range(n - d - 1):
        sizes[rng.randint(1, d - 1)] += 1
    layers, nxt = [], 0
    for size in sizes:
        layers.append(list(range(nxt, nxt + size)))
        nxt += size
    G = nx.Graph()
    G.add_nodes_from(range(n))

    def try_add(u, v):
        if u == v or G.has_edge(u, v):
            return False
        # a bridge between two components cannot break planarity
        bridge = not nx.has_path(G, u, v)
        G.add_edge(u, v)
        if not bridge and not nx.check_planarity(G)[0]:
            G.remove_edge(u, v)
            return False
        return True

    for i in range(1, d + 1):
        for v in layers[i]:
            # a predecessor that keeps the graph planar; one always exists
            # while the graph is a forest of layered paths
            for u in rng.sample(layers[i - 1], len(layers[i - 1])):
                if try_add(u, v):
                    break
    for i in range(d - 1, 0, -1):
        for u in layers[i]:
            if any(w in layers[i + 1] for w in G[u]):
                continue
            for v in rng.sample(layers[i + 1], len(layers[i + 1])):
                if try_add(u, v):
                    break
    if extra is None:
        extra = n
    for _ in range(extra):
        i = rng.randrange(d)
        try_add(rng.choice(layers[i]), rng.choice(layers[i + 1]))
    for _ in range(layer_edges):
        i = rng.randint(1, d - 1) if d > 1 else 0
        if len(layers[i]) > 1:
            try_add(*rng.sample(layers[i], 2))
    # a vertex whose every successor edge broke planarity is dropped
    dead = [u for i in range(1, d) for u in layers[i] if not any(w in layers[i + 1] for w in G[u])]
    while dead:
        G.remove_nodes_from(dead)
        dead = [u for i in range(1, d) for u in layers[i]
                if u in G and not any(w in G for w in layers[i + 1] if G.has_edge(u, w))]
    relabel = {v: k for k, v in enumerate(sorted(G))}
    n = len(relabel)
    edges = sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in G.edges())
    g = _embed(n, edges)
    inst = build_layered_instance(g, 0, n - 1)
    P = random_spath(inst, rng)
    Q = random_spath(inst, rng)
    return _document(g, 0, n - 1, P, Target.path(Q), "SPR")


FAMILIES = {
    "hex": (hex_family, ("levels",)),
    "grid": (grid, ("rows", "cols")),
    "switch_chain": (switch_chain, ("k",)),
    "random_layered": (random_layered, ("n", "d")),
}


def generate(family: str, params: list[int], seed: int = 0) -> SprgDocument:
    if family not in FAMILIES:
        raise BadParameters(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    fn, names = FAMILIES[family]
    if len(params) != len(names):
        raise BadParameters(f"{family} takes parameters {', '.join(names)}")
    if family == "random_layered":
        return fn(*params, seed=seed)
    return fn(*params)
