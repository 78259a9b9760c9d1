"""Small named instances used throughout the tests and the docs."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from .graph import PlaneGraph
from .instance import LayeredInstance, build_layered_instance


def rotation_from_coords(
    coords: Mapping[int, tuple[float, float]],
    edges: Sequence[tuple[int, int]],
    at_infinity: int | None = None,
) -> dict[int, tuple[int, ...]]:
    """Clockwise rotations of a straight-line drawing.

    ``at_infinity`` names a vertex placed at the point at infinity: its
    edges leave every neighbor radially away from the origin.
    """
    nbrs: dict[int, list[int]] = {v: [] for v in coords}
    if at_infinity is not None:
        nbrs[at_infinity] = []
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(v, w):
        if w == at_infinity:
            x, y = coords[v]
            return math.atan2(y, x)
        if v == at_infinity:
            x, y = coords[w]
            # seen from infinity the picture is mirrored
            return -math.atan2(y, x)
        (x0, y0), (x1, y1) = coords[v], coords[w]
        return math.atan2(y1 - y0, x1 - x0)

    return {v: tuple(sorted(ns, key=lambda w: -angle(v, w))) for v, ns in nbrs.items()}


def diamond(chord: bool = False) -> LayeredInstance:
    edges = [(0, 1), (0, 2), (1, 3), (2, 3)]
    coords = {0: (-1.0, 0.0), 1: (0.0, 1.0), 2: (0.0, -1.0), 3: (1.0, 0.0)}
    if chord:
        edges.append((1, 2))
    g = PlaneGraph.from_edges(4, edges, rotation_from_coords(coords, edges))
    return build_layered_instance(g, 0, 3)


def path3() -> LayeredInstance:
    g = PlaneGraph.from_edges(3, [(0, 1), (1, 2)], {})
    return build_layered_instance(g, 0, 2)


# HEX: the 6-cycle s, x1, y1, t, y2, x2
HEX_NAMES = {"s": 0, "x1": 1, "y1": 2, "t": 3, "y2": 4, "x2": 5}


def hex_cycle() -> LayeredInstance:
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]
    g = PlaneGraph.from_edges(6, edges, {})
    return build_layered_instance(g, 0, 3)


def switch1() -> LayeredInstance:
    """Quadrilateral x=1, a=2, y=4, b=3 with s=0 hanging inside and t=5 outside."""
    edges = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]
    g = PlaneGraph.from_edges(6, edges, {1: (2, 0, 3), 4: (2, 5, 3)})
    return build_layered_instance(g, 0, 5)


REDSW_NAMES = {
    "s": 0, "x": 1, "u1": 2, "u2": 3, "u3": 4, "a": 5, "b": 6, "c1": 7, "c2": 8,
    "e1": 9, "e2": 10, "y": 11, "w1": 12, "w2": 13, "w3": 14, "t": 15,
}


def redsw() -> LayeredInstance:
    """16 vertices, one switch x,a,b,y whose 4-cycle has s inside and t outside."""
    n = REDSW_NAMES
    pairs = [
        ("s", "x"), ("s", "u1"), ("s", "u2"), ("s", "u3"),
        ("x", "a"), ("x", "b"), ("x", "e1"), ("x", "e2"),
        ("u1", "a"), ("u1", "c1"), ("u2", "c1"), ("u2", "c2"), ("u3", "c2"), ("u3", "b"),
        ("a", "y"), ("a", "w1"), ("b", "y"), ("b", "w3"), ("c1", "y"), ("c2", "y"),
        ("e1", "w1"), ("e1", "w2"), ("e2", "w2"), ("e2", "w3"),
        ("y", "t"), ("w1", "t"), ("w2", "t"), ("w3", "t"),
    ]
    edges = [(n[a], n[b]) for a, b in pairs]
    coords = {
        "x": (-2, 0), "a": (0, 2), "y": (2, 0), "b": (0, -2), "s": (-1, 0),
        "u1": (-0.5, 1), "u2": (0, 0), "u3": (-0.5, -1), "c1": (0.8, 0.5), "c2": (0.8, -0.5),
        "e1": (-3, 1.5), "e2": (-3, -1.5), "w1": (-1, 3.5), "w3": (-1, -3.5), "w2": (-4.5, 0),
    }
    rot = rotation_from_coords({n[k]: v for k, v in coords.items()}, edges, at_infinity=n["t"])
    g = PlaneGraph.from_edges(16, edges, rot)
    return build_layered_instance(g, n["s"], n["t"])
