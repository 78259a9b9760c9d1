"""Shared corpus builders and checks for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from sprerouting.encoding import iter_encodings
from sprerouting.generators import generate, random_spath
from sprerouting.graph import PlaneGraph
from sprerouting.instance import build_layered_instance
from sprerouting.oracle import enumerate_spaths, materialize_encoding
from sprerouting.reduction import reduce_instance, reducedness_report

# criterion number -> summary line, printed by conftest at the end of the run
RESULTS: dict[int, str] = {}


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def random_layered_abstract(n: int, d: int, seed: int, density: float = 0.5,
                            layer_edges: int = 0):
    """A layered graph without an embedding; need not be planar."""
    rng = random.Random(seed)
    sizes = [1] * (d + 1)
    for _ in range(n - d - 1):
        sizes[rng.randint(1, d - 1)] += 1
    layers, nxt = [], 0
    for size in sizes:
        layers.append(list(range(nxt, nxt + size)))
        nxt += size
    edges = set()
    for i in range(1, d + 1):
        for v in layers[i]:
            edges.add((rng.choice(layers[i - 1]), v))
    for i in range(d - 1, 0, -1):
        for u in layers[i]:
            edges.add((u, rng.choice(layers[i + 1])))
    for i in range(d):
        for u in layers[i]:
            for v in layers[i + 1]:
                if rng.random() < density:
                    edges.add((u, v))
    for _ in range(layer_edges):
        i = rng.randint(1, d - 1)
        if len(layers[i]) > 1:
            u, v = rng.sample(layers[i], 2)
            edges.add((min(u, v), max(u, v)))
    g = PlaneGraph.from_edges(nxt, sorted(edges), None)
    return build_layered_instance(g, 0, nxt - 1)


def plane_random(n: int, d: int, seed: int, layer_edges: int = 0, extra: int | None = None):
    """(instance, P, Q) from the embedded random family."""
    from sprerouting.generators import random_layered
    doc = random_layered(n, d, seed, extra=extra, layer_edges=layer_edges)
    return doc.instance(), tuple(doc.path), tuple(doc.target.vertices)


def family_instances():
    """The small named families with every S-path as a target."""
    out = []
    specs = [("hex", [lv]) for lv in range(1, 5)]
    specs += [("grid", [r, c]) for r in range(2, 5) for c in range(r, 6) if r * c <= 18 and r + c - 2 <= 6]
    specs += [("switch_chain", [k]) for k in (1, 2)]
    for fam, params in specs:
        doc = generate(fam, params)
        inst = doc.instance()
        out.append((f"{fam}{params}", inst, tuple(doc.path), enumerate_spaths(inst)))
    return out


@lru_cache(maxsize=None)
def reduced_corpus(count: int, max_vertices: int, seed0: int = 0, need_switch: bool = False):
    """Fully reduced plane parts (no dominated vertex, no cut vertex), distinct by edge set."""
    from sprerouting.switches import switch_pairs
    seen, out = set(), []
    seed = seed0
    while len(out) < count and seed < seed0 + 200_000:
        rng = random.Random(seed)
        n = rng.randint(7, 22)
        d = rng.randint(3, 6)
        seed += 1
        if n < d + 2:
            continue
        inst, P, Q = plane_random(n, d, seed, extra=rng.randint(n // 2, 2 * n))
        for part in reduce_instance(inst, P, Q).parts:
            g = part.inst.graph
            if part.trivial or part.inst.d < 3 or g.vertex_count > max_vertices:
                continue
            key = tuple(sorted(g.edges()))
            if key in seen or reducedness_report(part.inst):
                continue
            if need_switch and not switch_pairs(part.inst):
                continue
            seen.add(key)
            out.append(part.inst)
    return tuple(out)


def random_query(inst, rng: random.Random):
    return random_spath(inst, rng), random_spath(inst, rng)


def compare_encodings(inst, P, Q) -> list[str]:
    """Mismatches between the DP encodings and the materialized classes."""
    problems = []
    prev_prefix: list[tuple[int, ...]] = []
    for enc in iter_encodings(inst, P, Q):
        i = enc.layer
        # one member prefix per node, built from the node it grew out of
        prefix = [prev_prefix[node.members[0]] + (node.l,) if i else (node.l,) for node in enc.nodes]
        prev_prefix = prefix
        ref = materialize_encoding(inst, P, Q, i)
        where = {}
        for c, cls in enumerate(ref.classes):
            for path in cls:
                where[path] = c
        image = []
        for node, pre in zip(enc.nodes, prefix):
            c = where.get(pre)
            if c is None:
                problems.append(f"layer {i}: prefix {pre} outside P's component")
                continue
            if (node.l, node.p, node.q) != (ref.labels[c], ref.p[c], ref.q[c]):
                problems.append(f"layer {i}: node {node.l} labels differ from class {c}")
            image.append(c)
        if len(set(image)) != len(image) or len(image) != len(ref.classes):
            problems.append(f"layer {i}: {len(enc.nodes)} nodes for {len(ref.classes)} classes")
            continue
        mapped = {frozenset(image[a] for a in e) for e in enc.edges()}
        if mapped != ref.edges:
            problems.append(f"layer {i}: edge sets differ")
    return problems


def low_degree_instance(seed: int, n_max: int = 13):
    """Every inner vertex has at most two neighbors in each adjacent layer."""
    rng = random.Random(seed)
    d = rng.randint(2, 5)
    sizes = [1] + [rng.randint(1, 3) for _ in range(d - 1)] + [1]
    while sum(sizes) > n_max:
        k = max(range(1, d), key=lambda i: sizes[i])
        sizes[k] -= 1
    layers, nxt = [], 0
    for size in sizes:
        layers.append(list(range(nxt, nxt + size)))
        nxt += size
    edges: set[tuple[int, int]] = set()
    up = {v: 0 for v in range(nxt)}
    down = {v: 0 for v in range(nxt)}

    def link(u, v):
        if (u, v) in edges:
            return
        inner = (u != 0 and up[u] >= 2) or (v != nxt - 1 and down[v] >= 2)
        if not inner:
            edges.add((u, v))
            up[u] += 1
            down[v] += 1

    for i in range(1, d + 1):
        for v in layers[i]:
            if down[v] == 0:
                free = [u for u in layers[i - 1] if u == 0 or up[u] < 2]
                link(rng.choice(free or layers[i - 1]), v)
        for u in layers[i - 1]:
            if up[u] == 0:
                free = [v for v in layers[i] if v == nxt - 1 or down[v] < 2]
                link(u, rng.choice(free or layers[i]))
    for _ in range(nxt):
        i = rng.randrange(d)
        link(rng.choice(layers[i]), rng.choice(layers[i + 1]))
    for _ in range(rng.randint(0, 4)):
        i = rng.randint(1, d - 1)
        if len(layers[i]) > 1:
            u, v = sorted(rng.sample(layers[i], 2))
            edges.add((u, v))
    g = PlaneGraph.from_edges(nxt, sorted(edges), None)
    return build_layered_instance(g, 0, nxt - 1)
