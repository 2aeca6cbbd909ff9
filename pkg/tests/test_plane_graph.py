from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from disklink.graph_gen import corpus, prism, stacked, wheel
from disklink.plane_graph import (
    AsymmetricAdjacency,
    Disconnected,
    EulerViolation,
    GraphTooSmall,
    NonSimple,
    OuterFaceNotAFace,
    PlaneGraph,
    VertexOutOfRange,
    check_three_connected,
    faces,
    validate_embedding,
)


def test_k4_has_three_internal_faces(k4):
    fs = validate_embedding(k4)
    assert len(fs.faces) == 4
    assert fs.internal_count == 3


def test_k4_swapped_rotation_breaks_euler(k4):
    rot = [list(r) for r in k4.rotations]
    rot[0][0], rot[0][1] = rot[0][1], rot[0][0]
    with pytest.raises(EulerViolation):
        validate_embedding(PlaneGraph(4, rot, k4.outer_face))


def test_too_small():
    with pytest.raises(GraphTooSmall):
        validate_embedding(PlaneGraph(2, [[1], [0]], [0, 1]))


def test_structural_errors():
    with pytest.raises(VertexOutOfRange):
        validate_embedding(PlaneGraph(4, [[1, 7], [0], [3], [2]], [0, 1]))
    with pytest.raises(NonSimple):
        validate_embedding(PlaneGraph(4, [[1, 1], [0], [3], [2]], [0, 1]))
    with pytest.raises(NonSimple):
        validate_embedding(PlaneGraph(4, [[0, 1], [0], [3], [2]], [0, 1]))
    with pytest.raises(Disconnected):
        validate_embedding(PlaneGraph(4, [[1], [0], [3], [2]], [0, 1]))
    with pytest.raises(AsymmetricAdjacency):
        validate_embedding(PlaneGraph(4, [[1, 2, 3], [0, 2], [0, 1, 3], [0, 2, 1]], [0, 2, 1]))


def test_outer_face_must_be_a_face(k4):
    with pytest.raises(OuterFaceNotAFace):
        validate_embedding(PlaneGraph(4, k4.rotations, [0, 1, 2]))
    # an internal face is a face, but it runs counterclockwise: reversed it is not
    with pytest.raises(OuterFaceNotAFace):
        validate_embedding(PlaneGraph(4, k4.rotations, list(reversed(k4.outer_face))))


def test_face_counts():
    assert faces(wheel(5)).internal_count == 5
    assert faces(stacked(10, 1)).internal_count == 15
    assert faces(prism(3)).internal_count == 4


def test_internal_faces_ordered_by_smallest_vertex():
    fs = faces(stacked(40, 3))
    keys = [(f[0], f[1]) for f in fs.internal]
    assert keys == sorted(keys)
    assert all(f[0] == min(f) for f in fs.internal)


def test_every_directed_edge_in_one_face():
    g = stacked(30, 2)
    fs = faces(g)
    seen = set()
    for f in fs.faces:
        for a, b in zip(f, f[1:] + f[:1]):
            assert (a, b) not in seen
            seen.add((a, b))
    assert len(seen) == 2 * g.edge_count
    assert sum(len(f) for f in fs.faces) == 2 * g.edge_count


def test_relabel_round_trip():
    g = stacked(25, 4)
    perm = list(range(g.n))
    random.Random(0).shuffle(perm)
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    assert g.relabel(perm).relabel(inv) == g
    assert faces(g.relabel(perm).relabel(inv)).faces == faces(g).faces


def test_three_connectivity_examples(k4):
    assert check_three_connected(k4)
    assert check_three_connected(wheel(8))
    # diamond: two triangles sharing edge (0, 2)
    diamond = PlaneGraph(4, [[1, 2, 3], [2, 0], [3, 0, 1], [0, 2]], [0, 3, 2, 1])
    validate_embedding(diamond)
    assert not check_three_connected(diamond)


def _brute_three_connected(g: PlaneGraph) -> bool:
    G = nx.Graph(g.edges())
    for a, b in itertools.combinations(range(g.n), 2):
        H = G.copy()
        H.remove_nodes_from([a, b])
        if not nx.is_connected(H):
            return False
    return True


def test_three_connectivity_matches_oracles():
    for spec, g in corpus("full"):
        if g.n > 30:
            continue
        expected = nx.node_connectivity(nx.Graph(g.edges())) >= 3
        assert check_three_connected(g) == expected, spec
        if g.n <= 12:
            assert _brute_three_connected(g) == expected, spec


def test_prism_minus_spoke_pair_is_not_three_connected():
    g = prism(5)
    # without two spokes, vertices 0 and 2 drop to degree 2
    rot = [list(r) for r in g.rotations]
    for a, b in ((0, 5), (2, 7)):
        rot[a].remove(b)
        rot[b].remove(a)
    h = PlaneGraph(g.n, rot, g.outer_face)
    assert not check_three_connected(h)
