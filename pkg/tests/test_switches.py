import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import plane_random
from sprerouting.errors import NoEmbedding, NotASwitchPair, SwitchVerticesNotOnP
from sprerouting.instance import build_layered_instance
from sprerouting.oracle import oracle_decide
from sprerouting.reference import HEX_NAMES as H, REDSW_NAMES as R
from sprerouting.reference import diamond, hex_cycle, redsw, switch1
from sprerouting.switches import (
    Switch, decide_reachable_target, decide_spr_planar, enumerate_switches, is_switch, pass_bound,
    project_onto_split, split_at_switch, switch_pairs,
)


def _r(*names):
    return tuple(R[n] for n in names)


def test_enumerate_switches():
    assert enumerate_switches(switch1()) == [Switch(1, 1, 4, 2, 3)]
    assert enumerate_switches(switch1())[0].cycle() == (1, 2, 4, 3)
    sws = enumerate_switches(redsw())
    assert [(s.x, s.a, s.b, s.y) for s in sws] == [_r("x", "a", "b", "y")]
    assert enumerate_switches(hex_cycle()) == []


def test_lens_cycles_are_not_switches():
    r = redsw()
    assert not is_switch(r, *_r("u2", "c1", "c2", "y"))
    assert not is_switch(r, *_r("x", "e1", "e2", "w2"))
    assert is_switch(r, *_r("x", "a", "b", "y"))


def test_switch_needs_rotation():
    bare = build_layered_instance(switch1().graph.without_rotation(), 0, 5)
    with pytest.raises(NoEmbedding):
        enumerate_switches(bare)


def test_split_at_switch():
    r = redsw()
    pair = _r("x", "y")
    sy, q_sy, xt, q_xt = split_at_switch(r, pair, {R["w2"]})
    assert q_sy == set() and q_xt == {R["w2"]}
    assert set(sy.graph.vertices) == set(_r("s", "x", "u1", "u2", "u3", "a", "b", "c1", "c2", "y"))
    assert set(xt.graph.vertices) == set(_r("x", "a", "b", "e1", "e2", "y", "w1", "w2", "w3", "t"))
    Q = _r("s", "u2", "c1", "y", "t")
    _, q_sy, _, q_xt = split_at_switch(r, pair, Q)
    assert q_sy == set(_r("s", "u2", "c1", "y")) and q_xt == set(_r("y", "t"))
    _, q_sy, _, q_xt = split_at_switch(r, pair, pair)
    assert q_sy | q_xt == set(pair)
    with pytest.raises(NotASwitchPair):
        split_at_switch(r, _r("u1", "y"), ())


def test_project_onto_split():
    r = redsw()
    pair = _r("x", "y")
    P = _r("s", "x", "a", "y", "t")
    assert project_onto_split(r, P, P, pair) == (P, P)
    _, p_xt = project_onto_split(r, P, _r("s", "u1", "a", "y", "t"), pair)
    assert p_xt == P
    p_sy, p_xt = project_onto_split(r, P, _r("s", "x", "e1", "w1", "t"), pair)
    assert p_sy == P and p_xt == _r("s", "x", "e1", "w1", "t")
    with pytest.raises(SwitchVerticesNotOnP):
        project_onto_split(r, _r("s", "u1", "a", "y", "t"), P, pair)


def test_reachable_target_examples():
    r = redsw()
    P = _r("s", "x", "a", "y", "t")
    v = decide_reachable_target(r, P, {R["w2"]})
    assert v.reachable and R["w2"] in v.witness
    assert oracle_decide(r, P, {R["w2"]}).reachable
    h = hex_cycle()
    assert not decide_reachable_target(h, (0, H["x1"], H["y1"], 3), {H["y2"]}).reachable
    v = decide_reachable_target(h, (0, H["x1"], H["y1"], 3), {H["x1"]})
    assert v.reachable and v.witness == (0, H["x1"], H["y1"], 3)


def test_spr_planar_examples():
    v = decide_spr_planar(diamond(), (0, 1, 3), (0, 2, 3))
    assert v.reachable and v.witness == (0, 2, 3)
    h = hex_cycle()
    assert not decide_spr_planar(h, (0, H["x1"], H["y1"], 3), (0, H["x2"], H["y2"], 3)).reachable
    r = redsw()
    P, Q = _r("s", "u1", "a", "y", "t"), _r("s", "x", "e2", "w3", "t")
    v = decide_spr_planar(r, P, Q)
    assert v.reachable and v.witness == Q
    assert oracle_decide(r, P, Q).reachable
    assert "stats" in v.diagnostics and v.decomposition is not None


def test_pass_bound():
    assert [pass_bound(d) for d in (2, 3, 4, 5, 9)] == [1, 1, 3, 5, 13]


@settings(max_examples=80, deadline=None)
@given(st.integers(6, 16), st.integers(3, 6), st.integers(0, 100_000))
def test_planar_deciders_match_oracle(n, d, seed):
    n = max(n, d + 2)
    rng = random.Random(seed)
    inst, P, Q = plane_random(n, d, seed, extra=rng.randint(n // 2, 2 * n))
    v = decide_spr_planar(inst, P, Q)
    assert v.reachable == oracle_decide(inst, P, Q).reachable
    if v.reachable:
        assert inst.is_spath(v.witness) and set(Q) <= set(v.witness)
    z = rng.choice([u for layer in inst.layers[1:-1] for u in layer])
    v = decide_reachable_target(inst, P, {z})
    assert v.reachable == oracle_decide(inst, P, {z}).reachable
    if v.reachable:
        assert z in v.witness and inst.is_spath(v.witness)
    for pair in switch_pairs(inst):
        assert decide_reachable_target(inst, P, pair).reachable == oracle_decide(inst, P, pair).reachable
