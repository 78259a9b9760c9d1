import pytest
from hypothesis import given, settings, strategies as st

from sprerouting.errors import (
    EmbeddingInvalid, GraphError, InvalidTarget, NoEmbedding, NotACycle, TerminalOnCycle, UnreachableTerminals,
)
from sprerouting.generators import random_layered
from sprerouting.graph import PlaneGraph, splice_after, trace_faces
from sprerouting.instance import (
    Target, build_layered_instance, complete_target, is_separating_cycle, is_subpath,
    validate_plane_instance, validate_target,
)
from sprerouting.reference import HEX_NAMES as H, REDSW_NAMES as R
from sprerouting.reference import diamond, hex_cycle, path3, redsw, switch1


def test_layers_of_reference_instances():
    dia = diamond()
    assert dia.d == 2 and set(dia.layers[1]) == {1, 2}
    p3 = path3()
    assert p3.d == 2 and p3.layers[1] == (1,)
    h = hex_cycle()
    assert h.d == 3
    assert set(h.layers[1]) == {H["x1"], H["x2"]}
    assert set(h.layers[2]) == {H["y1"], H["y2"]}


def test_unreachable_terminals():
    g = PlaneGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(UnreachableTerminals):
        build_layered_instance(g, 0, 3)


def test_equal_terminals_rejected():
    with pytest.raises(GraphError):
        build_layered_instance(PlaneGraph.from_edges(2, [(0, 1)]), 0, 0)


def test_bad_graphs_rejected():
    with pytest.raises(GraphError):
        PlaneGraph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        PlaneGraph.from_edges(3, [(0, 1), (1, 2)], {0: (1,), 1: (2,), 2: (1,)})


def test_faces_of_hex():
    faces = trace_faces(hex_cycle().graph)
    assert len(faces) == 2
    assert sorted(len(w) for w in faces.walks) == [6, 6]


def test_faces_of_tree():
    faces = trace_faces(path3().graph)
    assert len(faces) == 1
    assert len(faces.walks[0]) == 4  # each of the two edges twice


def test_faces_of_switch1():
    g = switch1().graph
    assert g.vertex_count - g.edge_count + len(trace_faces(g)) == 2
    assert len(trace_faces(g)) == 2


def test_faces_need_rotation():
    with pytest.raises(NoEmbedding):
        trace_faces(PlaneGraph.from_edges(2, [(0, 1)]))


def test_euler_check_catches_bad_rotation():
    # K4 with rotations that are not a plane drawing
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    rot = {0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)}
    with pytest.raises(EmbeddingInvalid):
        trace_faces(PlaneGraph.from_edges(4, edges, rot))


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 20), st.integers(2, 6), st.integers(0, 10_000))
def test_face_walks_cover_every_dart_once(n, d, seed):
    if n < d + 1:
        n = d + 1
    g = random_layered(n, d, seed).graph
    faces = trace_faces(g)
    assert sum(len(w) for w in faces.walks) == 2 * g.edge_count
    assert len(faces.dart_face) == 2 * g.edge_count
    assert g.vertex_count - g.edge_count + len(faces) == 2


def test_separating_cycles():
    assert is_separating_cycle(switch1(), (1, 2, 4, 3))
    r = redsw()
    assert is_separating_cycle(r, (R["x"], R["a"], R["y"], R["b"]))
    assert not is_separating_cycle(r, (R["u2"], R["c1"], R["y"], R["c2"]))


def test_separating_cycle_errors():
    h = hex_cycle()
    with pytest.raises(TerminalOnCycle):
        is_separating_cycle(h, (0, 1, 2, 3, 4, 5))
    with pytest.raises(NotACycle):
        is_separating_cycle(switch1(), (1, 2, 3, 4))
    no_rot = build_layered_instance(switch1().graph.without_rotation(), 0, 5)
    with pytest.raises(NoEmbedding):
        is_separating_cycle(no_rot, (1, 2, 4, 3))


def test_separating_cycle_is_a_vertex_cut():
    r = redsw()
    cyc = {R["x"], R["a"], R["y"], R["b"]}
    rest = r.graph.induced(set(r.graph.vertices) - cyc)
    assert R["t"] not in rest.component_of(R["s"])


def test_plane_validation():
    assert validate_plane_instance(redsw(), expect_reduced=True) == []
    assert validate_plane_instance(hex_cycle(), expect_reduced=True) == []


def _interleaved(rotation_at_3):
    # s=0; layer 1 = {1, 2}; layer 2 = {3}; layer 3 = {4, 5}; t=6
    edges = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]
    rot = {0: (1, 2), 1: (0, 3), 2: (3, 0), 3: rotation_at_3, 4: (3, 6), 5: (6, 3), 6: (4, 5)}
    return build_layered_instance(PlaneGraph.from_edges(7, edges, rot), 0, 6)


def test_plane_validation_flags_interleaved_rotation():
    assert validate_plane_instance(_interleaved((1, 2, 4, 5)), expect_reduced=True) == []
    report = validate_plane_instance(_interleaved((1, 4, 2, 5)), expect_reduced=True)
    assert "vertex 3: in-neighbors not consecutive in rotation" in report
    assert any(line.startswith("euler") for line in report)


def test_targets():
    dia = diamond()
    assert validate_target(dia, Target.subpath([1]))
    assert not validate_target(dia, Target.subpath([1, 2]))
    h = hex_cycle()
    assert not validate_target(h, Target.subpath([H["x1"], H["y2"]]))
    assert validate_target(h, Target.path([0, 1, 2, 3]))
    assert not validate_target(h, Target.path([0, 1, 4, 3]))


def test_target_shapes():
    with pytest.raises(InvalidTarget):
        Target("pair", (1,))
    with pytest.raises(InvalidTarget):
        Target("vertex", (1, 2))
    with pytest.raises(InvalidTarget):
        Target("walk", (1,))
    assert Target.subpath([3, 1, 1]).vertices == (1, 3)


def test_complete_target_extends_subpath():
    r = redsw()
    path = complete_target(r, [R["u2"], R["c1"]])
    assert r.is_spath(path) and {R["u2"], R["c1"]} <= set(path)
    assert is_subpath(r, [R["u2"], R["c1"]])
    assert not is_subpath(r, [R["u1"], R["c2"]])


def test_splice_after():
    order = [1, 2, 3]
    splice_after(order, 2, 9)
    assert order == [1, 2, 9, 3]
    splice_after(order, 3, 7)
    assert order == [1, 2, 9, 3, 7]
