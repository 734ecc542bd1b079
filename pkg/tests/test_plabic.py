import json

import pytest

from symsep.collection import WSCollection, enumerate_maximal, enumerate_maximal_symmetric, find_spine, is_symmetric
from symsep.cyclic import CyclicSet, bar, is_pair_free
from symsep.errors import DomainError, StructuralError
from symsep.plabic import (
    PlabicGraph,
    attach_boundary_leaves,
    dual_graph,
    face_labels,
    hinted_labels,
    is_reduced,
    is_symmetric_graph,
    midline_labels,
    mirror_faces,
    reducedness_report,
    strip_boundary_leaves,
    trip_permutation,
    trips,
)
from symsep.positroid import Color, DecoratedPermutation, Positroid, decorated_permutations, top_cell_perm, type_c_permutations, uniform_perm
from symsep.tiling import build_tiling

W, B = Color.WHITE, Color.BLACK
TOP2 = Positroid.from_perm(top_cell_perm(2))
C13 = WSCollection.of([[1, 2], [2, 3], [3, 4], [1, 4], [1, 3]], m=4, anchor=TOP2)


def top_dual():
    return dual_graph(build_tiling(C13))


def test_dual_of_example():
    G = top_dual()
    internal = range(G.m, G.num_vertices)
    assert G.m == 4 and len(internal) == 4
    assert sorted(G.colors[v].value for v in internal) == ["black", "black", "white", "white"]
    assert all(G.degree(v) == 3 for v in internal)
    for i in range(1, 5):
        assert G.target(G.leg(i)) >= G.m
    # internal edges form a 4-cycle
    inner = [(u, w) for u, w in G.edges if u >= G.m and w >= G.m]
    assert len(inner) == 4
    assert all(G.colors[u] is not G.colors[w] for u, w in inner)
    assert G.num_faces == 5 and G.euler_ok()


def test_trips_of_example():
    G = top_dual()
    assert [(t.start, t.end) for t in trips(G)] == [(1, 3), (2, 4), (3, 1), (4, 2)]
    assert sum(len(t.steps) for t in trips(G)) == 2 * len(G.edges)
    assert trip_permutation(G) == DecoratedPermutation((3, 4, 1, 2))


def test_face_labels_of_example():
    G = top_dual()
    L = face_labels(G)
    assert L.label_set() == C13.members
    assert [str(I) for I in L.boundary_labels()] == ["{1,2}", "{2,3}", "{3,4}", "{1,4}"]
    assert hinted_labels(G) == L.labels


def single_leaf(color):
    return PlabicGraph(1, (None, color), ((0, 1),), ((0,), (1,)))


def test_single_leaf():
    assert trip_permutation(single_leaf(W)) == DecoratedPermutation((1,), frozenset({1}))
    assert trip_permutation(single_leaf(B)) == DecoratedPermutation((1,))
    assert [(t.start, t.end) for t in trips(single_leaf(W))] == [(1, 1)]
    assert face_labels(single_leaf(W)).label_set() == {CyclicSet.of([1], 1)}


def test_all_white_leaves_single_face():
    f = DecoratedPermutation((1, 2, 3), frozenset({1, 2, 3}))
    M = Positroid.from_perm(f)
    (C,) = enumerate_maximal(M)
    G = dual_graph(build_tiling(C))
    L = face_labels(G)
    assert G.num_faces == 1 and L.label_set() == {CyclicSet.of([1, 2, 3], 3)}
    assert trip_permutation(G) == f


def bigon():
    # white 2 and black 3 joined by two parallel edges, legs 1 -> 2 and 2 -> 3
    edges = ((0, 2), (1, 3), (2, 3), (2, 3))
    rotation = ((0,), (2,), (6, 4, 1), (3, 5, 7))
    return PlabicGraph(2, (None, None, W, B), edges, rotation)


def test_bigon_not_reduced():
    G = bigon()
    report = reducedness_report(G)
    assert not is_reduced(G)
    assert report[4] is False and report[1] and report[2]
    with pytest.raises(DomainError):
        face_labels(G)


def test_internal_leaf_not_reduced():
    # white trivalent vertex 2 with legs 1 and 2, plus an internal black leaf 3
    edges = ((0, 2), (1, 2), (2, 3))
    rotation = ((0,), (2,), (1, 4, 3), (5,))
    G = PlabicGraph(2, (None, None, W, B), edges, rotation)
    assert reducedness_report(G)[2] is False and not is_reduced(G)


def test_structure_validation():
    with pytest.raises(StructuralError):
        PlabicGraph(1, (W,), (), ((),))
    with pytest.raises(StructuralError):
        PlabicGraph(1, (None, W), ((0, 1),), ((1,), (0,)))


def test_star_for_k1():
    M = Positroid.from_perm(uniform_perm(1, 5))
    (C,) = enumerate_maximal(M)
    G = dual_graph(build_tiling(C))
    assert G.num_vertices == 6 and G.colors[5] is W and G.degree(5) == 5


def test_round_trip_m_le_6():
    for m in range(1, 7):
        for f in decorated_permutations(m):
            M = Positroid.from_perm(f)
            for C in enumerate_maximal(M):
                G = dual_graph(build_tiling(C))
                report = reducedness_report(G)
                assert all(report.values()), (f, C, report)
                L = face_labels(G)
                assert L.label_set() == C.members
                assert L.boundary_labels() == tuple(M.necklace)
                assert trip_permutation(G) == f
                assert G.euler_ok()


def test_symmetry_equivalence():
    for n in (1, 2, 3):
        for f in type_c_permutations(n, fixed_point_free=True):
            M = Positroid.from_perm(f)
            for C in enumerate_maximal(M):
                G = dual_graph(build_tiling(C))
                assert is_symmetric_graph(G) == is_symmetric(C)


def test_mirror_faces_carry_bar_labels():
    for n in (1, 2, 3):
        for f in type_c_permutations(n, fixed_point_free=True):
            for C in enumerate_maximal_symmetric(Positroid.from_perm(f)):
                G = dual_graph(build_tiling(C))
                labels = face_labels(G).labels
                fmap = mirror_faces(G)
                assert all(labels[fmap[F]] == bar(labels[F]) for F in labels)


def test_midline_is_spine():
    assert [str(I) for I in midline_labels(top_dual())] == ["{1,2}", "{1,3}", "{3,4}"]
    for n in (1, 2, 3):
        for f in type_c_permutations(n, fixed_point_free=True):
            for C in enumerate_maximal_symmetric(Positroid.from_perm(f)):
                G = dual_graph(build_tiling(C))
                mid = set(midline_labels(G))
                assert mid == set(find_spine(C).chain)
                # geometric side: dual vertices of faces on the axis are pair-free labels
                assert mid == {I for I in C if is_pair_free(I)}


def test_asymmetric_graph_detected():
    M = Positroid.from_perm(top_cell_perm(3))
    asym = [C for C in enumerate_maximal(M) if not is_symmetric(C)]
    G = dual_graph(build_tiling(asym[0]))
    assert not is_symmetric_graph(G) and midline_labels(G) is None


def test_strip_white_leaf():
    f = DecoratedPermutation((3, 2, 1), frozenset({2}))
    M = Positroid.from_perm(f)
    (C,) = enumerate_maximal(M)
    G = dual_graph(build_tiling(C))
    H, record = strip_boundary_leaves(G)
    assert H.m == 2 and record.kept == (1, 3) and record.white == {2}
    lifted = {record.lift(I) for I in face_labels(H).label_set()}
    assert lifted == face_labels(G).label_set()
    back = attach_boundary_leaves(H, record)
    assert trip_permutation(back) == f
    assert face_labels(back).label_set() == face_labels(G).label_set()


def test_strip_is_identity_without_leaves():
    G = top_dual()
    H, record = strip_boundary_leaves(G)
    assert H is G and record.kept == (1, 2, 3, 4)


def test_strip_round_trip_all_m_le_5():
    for m in range(1, 6):
        for f in decorated_permutations(m):
            for C in enumerate_maximal(Positroid.from_perm(f)):
                G = dual_graph(build_tiling(C))
                H, record = strip_boundary_leaves(G)
                if H.m:
                    assert {record.lift(I) for I in face_labels(H).label_set()} == C.members
                assert trip_permutation(attach_boundary_leaves(H, record)) == f


def test_json_and_dot():
    G = top_dual()
    again = PlabicGraph.from_json(json.dumps(G.to_json()))
    assert again.to_json() == G.to_json()
    assert trip_permutation(again) == trip_permutation(G)
    dot = G.to_dot()
    assert dot == top_dual().to_dot()
    assert dot.count("shape=plaintext") == 4 and dot.count("fillcolor=white") == 2
    assert dot.count("fillcolor=black") == 2 and dot.count(" -- ") == len(G.edges)
