"""Switches and the divide-and-conquer algorithms for plane instances.

A switch x, a, b, y is a separating 4-cycle x, a, y, b with x two layers
below y.  Every S-path meets it, so an instance with a switch pair on the
current path falls apart into the part below y and the part above x,
which are solved recursively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .encoding import DEFAULT_CAP, DpDiagnostics
from .errors import InvariantViolation, NoEmbedding, NotASwitchPair, SwitchVerticesNotOnP
from .graph import separates
from .instance import LayeredInstance, SPath, Verdict, is_subpath, subinstance_between
from .reduction import lift_witness, reduce_instance
from .standard_form import decide_tspr


@dataclass(frozen=True, order=True)
class Switch:
    i: int
    x: int
    y: int
    a: int
    b: int

    @property
    def pair(self) -> tuple[int, int]:
        return self.x, self.y

    def cycle(self) -> tuple[int, int, int, int]:
        return self.x, self.a, self.y, self.b


def is_switch(inst: LayeredInstance, x: int, a: int, b: int, y: int) -> bool:
    g = inst.graph
    if g.rotation is None:
        raise NoEmbedding("switch detection needs a rotation system")
    if {x, a, b, y} & {inst.s, inst.t}:
        return False
    if not (g.has_edge(x, a) and g.has_edge(a, y) and g.has_edge(y, b) and g.has_edge(b, x)):
        return False
    # a 4-cycle bounding a face has nothing on that side
    faces = g.faces
    cyc = {x, a, y, b}
    for dart in ((x, a), (a, x)):
        walk = faces.walks[faces.face_of(*dart)]
        if len(walk) == 4 and set(walk) == cyc:
            return False
    hit = separates(g, (x, a, y, b), inst.s, inst.t)
    if hit:
        seen = inst.graph.bfs_distances(inst.s, set(g.vertices) - cyc)
        if inst.t in seen:
            raise InvariantViolation(f"cycle {x},{a},{y},{b} separates but is no vertex cut")
    return hit


def enumerate_switches(inst: LayeredInstance) -> list[Switch]:
    """All switches, ordered by layer, then x, then y, then a."""
    if inst.graph.rotation is None:
        raise NoEmbedding("switch detection needs a rotation system")
    out = []
    for i in range(1, inst.d - 2):
        for x in inst.layers[i]:
            common: dict[int, list[int]] = {}
            for a in sorted(inst.successors(x)):
                for y in inst.successors(a):
                    common.setdefault(y, []).append(a)
            for y in sorted(common):
                mids = common[y]
                for j, a in enumerate(mids):
                    for b in mids[j + 1:]:
                        if is_switch(inst, x, a, b, y):
                            out.append(Switch(i, x, y, a, b))
    out.sort()
    return out


def switch_pairs(inst: LayeredInstance) -> list[tuple[int, int]]:
    pairs = []
    for sw in enumerate_switches(inst):
        if sw.pair not in pairs:
            pairs.append(sw.pair)
    return pairs


def _is_switch_pair(inst: LayeredInstance, x: int, y: int) -> bool:
    if x not in inst.layer_of or inst.layer_of.get(y) != inst.layer_of[x] + 2:
        return False
    mids = sorted(set(inst.successors(x)) & set(inst.predecessors(y)))
    return any(is_switch(inst, x, a, b, y) for j, a in enumerate(mids) for b in mids[j + 1:])


def split_at_switch(inst: LayeredInstance, pair: tuple[int, int], Q: Iterable[int]):
    """The instances below y and above x, with the target split between them."""
    x, y = pair
    if not _is_switch_pair(inst, x, y):
        raise NotASwitchPair(f"({x}, {y}) is not a switch pair")
    Q = frozenset(Q)
    sy = subinstance_between(inst, inst.s, y)
    xt = subinstance_between(inst, x, inst.t)
    return sy, frozenset(v for v in Q if v in sy.layer_of), xt, frozenset(v for v in Q if v in xt.layer_of)


def project_onto_split(inst: LayeredInstance, P: Sequence[int], Q: Sequence[int],
                       pair: tuple[int, int], sy: LayeredInstance | None = None,
                       xt: LayeredInstance | None = None) -> tuple[SPath, SPath]:
    """Q's vertices on one side of the switch, P's vertices everywhere else."""
    x, y = pair
    if x not in P or y not in P:
        raise SwitchVerticesNotOnP(f"switch vertices {x}, {y} are not both on P")
    sy = sy or subinstance_between(inst, inst.s, y)
    xt = xt or subinstance_between(inst, x, inst.t)
    out = []
    for side in (sy, xt):
        proj = tuple(q if q in side.layer_of else p for p, q in zip(P, Q))
        if not inst.is_spath(proj):
            raise InvariantViolation(f"projection {proj} is not an S-path")
        out.append(proj)
    return out[0], out[1]


# -- recursion bookkeeping -------------------------------------------------------


def pass_bound(d: int) -> int:
    """Passes of the divide step: T(d) = 1 + T(d') + T(d - d' + 2) with T(3) = 1."""
    return max(1, 2 * d - 5)


@dataclass
class Stats:
    cap: int = DEFAULT_CAP
    dp: DpDiagnostics = field(default_factory=DpDiagnostics)
    tspr_calls: int = 0
    target_passes: int = 0
    path_passes: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "tspr_calls": self.tspr_calls,
            "target_passes": self.target_passes,
            "path_passes": self.path_passes,
            "dp_allocated": self.dp.allocated,
            "dp_max_nodes": self.dp.max_nodes,
        }


def _tspr(inst, P, Q, stats: Stats) -> Verdict:
    stats.tspr_calls += 1
    return decide_tspr(inst, P, Q, stats.cap, stats.dp)


def _via_parts(inst: LayeredInstance, P: Sequence[int], Q: Iterable[int],
               solve: Callable, stats: Stats, trace: dict) -> Verdict:
    """Reduce, solve every nontrivial part, glue the witnesses back."""
    red = reduce_instance(inst, P, Q)
    trace["reduction"] = red.trace.to_json()
    trace["parts"] = []
    witnesses = []
    for part in red.parts:
        if part.trivial or part.Q <= set(part.P):
            witnesses.append(part.P)
            continue
        sub: dict[str, Any] = {"s": part.inst.s, "t": part.inst.t, "d": part.inst.d,
                               "vertices": part.inst.graph.vertex_count}
        trace["parts"].append(sub)
        v = solve(part.inst, part.P, part.Q, stats, sub)
        if not v.reachable:
            return Verdict(False)
        witnesses.append(v.witness)
    return Verdict(True, lift_witness(red.trace, witnesses))


def _checked(inst: LayeredInstance, witness: SPath, target: Iterable[int]) -> SPath:
    if not inst.is_spath(witness) or not set(target) <= set(witness):
        raise InvariantViolation(f"witness {witness} is not an S-path containing the target")
    return witness


# -- reaching a vertex or a switch pair ------------------------------------------


def _reach(inst: LayeredInstance, P: SPath, T: frozenset[int], stats: Stats, trace: dict) -> Verdict:
    """Reduced instance, target of at most two vertices."""
    stats.target_passes += 1
    passes0 = stats.target_passes
    T = T - {inst.s, inst.t}
    if T <= set(P):
        return Verdict(True, P)
    v = _tspr(inst, P, T, stats)
    if v.reachable:
        trace["topological"] = True
        return Verdict(True, _checked(inst, v.witness, T))
    pairs = switch_pairs(inst)
    trace["pairs"] = [list(p) for p in pairs]
    for x, y in pairs:
        v = _tspr(inst, P, {x, y}, stats)
        if not v.reachable:
            continue
        P2 = v.witness
        i = inst.layer_of[x]
        sy, T_sy, xt, T_xt = split_at_switch(inst, (x, y), T)
        if T_sy and T_xt and not T <= set(sy.layer_of) and not T <= set(xt.layer_of):
            if len(T) == 2 and not _is_switch_pair(inst, *sorted(T, key=inst.layer_of.get)):
                raise InvariantViolation(f"target {sorted(T)} straddles a switch but is no switch pair")
        trace["chosen"] = [x, y]
        trace["sy"], trace["xt"] = {}, {}
        left = _via_parts(sy, P2[: i + 3], T_sy, _reach, stats, trace["sy"])
        if not left.reachable:
            return Verdict(False)
        right = _via_parts(xt, P2[i:], T_xt, _reach, stats, trace["xt"])
        if not right.reachable:
            return Verdict(False)
        W_sy, W_xt = left.witness, right.witness
        if T <= set(xt.layer_of):
            W = P2[:i] + W_xt
        elif T <= set(sy.layer_of):
            W = W_sy + P2[i + 3:]
        else:
            W = W_sy[: i + 2] + W_xt[2:]
        _bound_check(inst.d, stats.target_passes - passes0 + 1)
        return Verdict(True, _checked(inst, W, T))
    return Verdict(False)


def _bound_check(d: int, passes: int) -> None:
    if passes > pass_bound(d):
        raise InvariantViolation(f"{passes} passes exceed the bound {pass_bound(d)} at distance {d}")


def decide_reachable_target(inst: LayeredInstance, P: Sequence[int], target: Iterable[int],
                            cap: int = DEFAULT_CAP, stats: Stats | None = None) -> Verdict:
    """Unrestricted reachability of a single vertex or a switch pair on a plane instance."""
    stats = stats or Stats(cap)
    T = frozenset(target)
    if len(T) > 2:
        raise ValueError("target must be a single vertex or a switch pair")
    if not is_subpath(inst, T):
        return Verdict(False, diagnostics={"reason": "target is not an S-subpath"})
    trace: dict[str, Any] = {"d": inst.d, "vertices": inst.graph.vertex_count}
    v = _via_parts(inst, tuple(P), T, _reach, stats, trace)
    if v.reachable:
        _checked(inst, v.witness, T)
    return Verdict(v.reachable, v.witness, {"stats": stats.to_json()}, decomposition=trace)


# -- reaching a full path ----------------------------------------------------------


def _spr(inst: LayeredInstance, P: SPath, Q: frozenset[int], stats: Stats, trace: dict) -> Verdict:
    """Reduced instance; ``Q`` is the vertex set of an S-path."""
    stats.path_passes += 1
    passes0 = stats.path_passes
    if Q <= set(P):
        return Verdict(True, P)
    v = _tspr(inst, P, Q, stats)
    if v.reachable:
        trace["topological"] = True
        return Verdict(True, v.witness)
    Qpath = tuple(sorted(Q | {inst.s, inst.t}, key=inst.layer_of.get))
    pairs = switch_pairs(inst)
    trace["pairs"] = [list(p) for p in pairs]
    for x, y in pairs:
        vp = _reach(inst, P, frozenset((x, y)), stats, {})
        vq = _reach(inst, Qpath, frozenset((x, y)), stats, {})
        if vp.reachable != vq.reachable:
            trace["differs_at"] = [x, y]
            return Verdict(False)
        if not vp.reachable:
            continue
        P2, Q2 = vp.witness, vq.witness
        i = inst.layer_of[x]
        sy = subinstance_between(inst, inst.s, y)
        xt = subinstance_between(inst, x, inst.t)
        trace["chosen"] = [x, y]
        trace["sy"], trace["xt"] = {}, {}
        left = _via_parts(sy, P2[: i + 3], Q2[: i + 3], _spr, stats, trace["sy"])
        if not left.reachable:
            return Verdict(False)
        right = _via_parts(xt, P2[i:], Q2[i:], _spr, stats, trace["xt"])
        if not right.reachable:
            return Verdict(False)
        _bound_check(inst.d, stats.path_passes - passes0 + 1)
        return Verdict(True, Qpath)
    return Verdict(False)


def decide_spr_planar(inst: LayeredInstance, P: Sequence[int], Q: Sequence[int],
                      cap: int = DEFAULT_CAP, stats: Stats | None = None) -> Verdict:
    """Unrestricted reachability of the S-path ``Q`` from ``P`` on a plane instance."""
    stats = stats or Stats(cap)
    P, Q = tuple(P), tuple(Q)
    if not inst.is_spath(P) or not inst.is_spath(Q):
        raise InvariantViolation("P and Q must be S-paths")
    trace: dict[str, Any] = {"d": inst.d, "vertices": inst.graph.vertex_count}
    v = _via_parts(inst, P, Q, _spr, stats, trace)
    witness = _checked(inst, v.witness, Q) if v.reachable else None
    return Verdict(v.reachable, witness, {"stats": stats.to_json()}, decomposition=trace)
