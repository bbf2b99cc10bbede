import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_stellar, brute_wedge, corpus, label_facets
from plseeds import (
    are_isomorphic,
    assembled_face,
    boundary_of_simplex,
    j_construction,
    link,
    stellar_subdivision,
    suspension,
    wedge,
    wedge_via_nonface_duplication,
)
from plseeds.complex import LabelCollision, NotAFace, NotAVertex, iter_faces
from plseeds.family import crosspolytope_boundary, octahedron, polygon
from plseeds.operations import BoundsViolation, LengthMismatch, copy_label, default_copy_label


def fs(*items):
    return {frozenset(x) for x in items}


def faces_of(K, max_size=None):
    return [K.face_labels(tuple(i for i in range(K.m) if f >> i & 1)) for f in iter_faces(K, max_size)]


# -- stellar subdivision ----------------------------------------------------

def test_ss_edge_of_triangle_is_square():
    S = stellar_subdivision(polygon(3), ["1", "2"], "w")
    assert label_facets(S) == fs("23", "13", "w1", "w2")
    assert S.m == 4 and S.dim == 1


def test_ss_facet_of_square_is_pentagon():
    S = stellar_subdivision(polygon(4), ["1", "2"])
    assert are_isomorphic(S, polygon(5)) is not None


def test_ss_single_vertex_relabels():
    S = stellar_subdivision(polygon(5), ["1"], "z")
    assert S.m == 5
    assert label_facets(S) == fs("z2", "z5", "23", "34", "45")


def test_ss_errors():
    with pytest.raises(NotAFace):
        stellar_subdivision(polygon(5), ["1", "3"])
    with pytest.raises(LabelCollision):
        stellar_subdivision(polygon(5), ["1", "2"], "3")


def test_ss_against_definition():
    for K in corpus():
        if K.m > 9:
            continue
        for face in faces_of(K):
            if len(face) < 2:
                continue
            S = stellar_subdivision(K, face, "w")
            assert label_facets(S) == brute_stellar(K, face, "w"), (K.name, face)
            assert S.m == K.m + 1 and S.n == K.n


# -- wedge ------------------------------------------------------------------

def test_wedge_of_two_points():
    W = wedge(boundary_of_simplex(["a", "b"]), "a", "a'")
    assert label_facets(W) == {frozenset(x) for x in (("a", "a'"), ("a", "b"), ("a'", "b"))}


def test_wedge_pentagon_facets():
    W = wedge(polygon(5), "1")
    want = {frozenset(f) for f in [
        ("1", "1#1", "2"), ("1", "1#1", "5"), ("1", "2", "3"), ("1", "3", "4"), ("1", "4", "5"),
        ("1#1", "2", "3"), ("1#1", "3", "4"), ("1#1", "4", "5")]}
    assert label_facets(W) == want
    assert W.labels == ("1", "1#1", "2", "3", "4", "5")
    assert link(W, ["1#1"]) == polygon(5)


def test_wedge_errors():
    with pytest.raises(NotAVertex):
        wedge(polygon(5), "7")
    with pytest.raises(LabelCollision):
        wedge(polygon(5), "1", "2")


def test_wedge_against_definition():
    for K in corpus():
        for v in K.labels:
            W = wedge(K, v, "new")
            assert label_facets(W) == brute_wedge(K, v, "new")
            assert W.m == K.m + 1 and W.n == K.n + 1
            assert W.is_face([v, "new"])


def test_nonface_duplication_examples():
    P5 = polygon(5)
    assert wedge_via_nonface_duplication(P5, "1") == wedge(P5, "1")
    T = polygon(3)
    assert wedge_via_nonface_duplication(T, "1") == wedge(T, "1")


def test_wedge_equals_nonface_duplication_on_corpus():
    cases = 0
    for K in corpus():
        for v in K.labels:
            assert wedge_via_nonface_duplication(K, v) == wedge(K, v), (K.name, v)
            cases += 1
    assert cases >= 50


# -- suspension -------------------------------------------------------------

def test_suspension_examples():
    assert are_isomorphic(suspension(boundary_of_simplex(["a", "b"])), polygon(4)) is not None
    assert len(suspension(polygon(5)).facets) == 10
    S = suspension(octahedron())
    assert len(S.facets) == 16
    assert are_isomorphic(S, crosspolytope_boundary(4)) is not None


def test_suspension_pair_is_non_face():
    S = suspension(polygon(5), "N", "S")
    assert not S.is_face(["N", "S"])
    with pytest.raises(LabelCollision):
        suspension(polygon(5), "1", "S")


# -- J-construction ---------------------------------------------------------

def test_j_construction_examples():
    P5 = polygon(5)
    assert j_construction(P5, (1, 1, 1, 1, 1)) == P5
    assert j_construction(P5, (2, 1, 1, 1, 1)) == wedge(P5, "1")
    order_a = wedge(wedge(P5, "1", "1#1"), "2", "2#1")
    order_b = wedge(wedge(P5, "2", "2#1"), "1", "1#1")
    assert order_a == order_b == j_construction(P5, (2, 2, 1, 1, 1))


def test_j_construction_copy_label_clash():
    K = j_construction(polygon(5), (2, 1, 1, 1, 1))
    with pytest.raises(LabelCollision):
        j_construction(K, (2, 1, 1, 1, 1, 1))
    assert j_construction(K.integer_labels(), (2, 1, 1, 1, 1, 1)).m == 7


def test_j_construction_length_mismatch():
    with pytest.raises(LengthMismatch):
        j_construction(polygon(5), (2, 1))
    with pytest.raises(ValueError):
        j_construction(polygon(5), (0, 1, 1, 1, 1))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=5, max_size=5), st.randoms(use_true_random=False))
def test_j_construction_order_independent(J, rnd):
    """Wedging the copies in any order (each copy off the previous one) gives the same complex."""
    P5 = polygon(5)
    steps = [(v, k) for v, j in zip(P5.labels, J) for k in range(1, j)]
    rnd.shuffle(steps)
    done: set = set()
    out = P5
    pending = list(steps)
    while pending:
        for s in pending:  # first pending copy whose predecessor exists
            v, k = s
            if k == 1 or (v, k - 1) in done:
                out = wedge(out, copy_label(v, k - 1), copy_label(v, k))
                done.add(s)
                pending.remove(s)
                break
    assert out.same_complex(j_construction(P5, J))
    assert out.picard == P5.picard


def test_link_of_copies_peels_back():
    P5 = polygon(5)
    J = (3, 2, 1, 2, 1)
    K = j_construction(P5, J)
    cur = list(J)
    for i, v in enumerate(P5.labels):
        while cur[i] > 1:
            K = link(K, [copy_label(v, cur[i] - 1)])
            cur[i] -= 1
            assert K == j_construction(P5, cur)
    assert K == P5


# -- assembled faces --------------------------------------------------------

def test_assembled_face_examples():
    P5 = polygon(5)
    J = (2, 2, 1, 1, 1)
    assert assembled_face(P5, J, (0, 0, 0, 0, 0)) == ("1", "2")
    assert assembled_face(P5, J, (1, 1, 0, 0, 0)) == ("1#1", "2#1")
    assert assembled_face(P5, (1,) * 5, (0,) * 5) == ()


def test_assembled_face_bounds():
    with pytest.raises(BoundsViolation):
        assembled_face(polygon(5), (2, 2, 1, 1, 1), (2, 0, 0, 0, 0))
    with pytest.raises(BoundsViolation):
        assembled_face(polygon(5), (2, 2, 1, 1, 1), (0, 0, 1, 0, 0))


def test_assembled_faces_exhaustive_small():
    for K in (polygon(5), octahedron()):
        for J in itertools.product((1, 2), repeat=K.m):
            KJ = j_construction(K, J)
            for s in itertools.product(*[range(j) for j in J]):
                face = assembled_face(K, J, s, KJ)
                assert KJ.is_face(face)


# -- Picard identities ------------------------------------------------------

def test_picard_identities():
    samples = 0
    for K in corpus():
        if K.m > 9:
            continue
        K = K.integer_labels()  # copies of "1" must not clash with an existing "1#1"
        for J in [(2,) + (1,) * (K.m - 1), (1,) * (K.m - 1) + (3,), tuple(1 + i % 3 for i in range(K.m))]:
            assert j_construction(K, J).picard == K.picard
            samples += 1
        for face in faces_of(K):
            if face:
                assert stellar_subdivision(K, face, "w").picard == K.picard + (len(face) > 1)
                samples += 1
    assert samples >= 100


def test_ss_of_wedged_edge_is_suspension():
    for K in corpus():
        if K.m > 9:
            continue
        for v in K.labels:
            c = default_copy_label(K, v)
            S = stellar_subdivision(wedge(K, v, c), [v, c])
            assert are_isomorphic(S, suspension(K)) is not None, (K.name, v)
