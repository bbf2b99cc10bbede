import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import certificate, corpus_seeds, leibniz_det
from plseeds import j_construction, stellar_subdivision, wedge
from plseeds.charmap import (
    GF2,
    INT,
    CharMatrix,
    InvalidInputCertificate,
    ShapeMismatch,
    det_bareiss,
    det_exact,
    find_certificate,
    j_propagate,
    picard_and_inequality,
    search_charmap,
    stellar_propagate,
    verify_charmap,
    wedge_propagate,
)
from plseeds.classify import is_seed
from plseeds.complex import NotAFace
from plseeds.family import cyclic_boundary, octahedron, polygon
from plseeds.io import certificate_to_dict, dumps
from plseeds.operations import assembled_face


def cols(ring, *columns):
    return CharMatrix.from_columns(ring, columns)


# -- determinants -----------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinants_match_leibniz(rows):
    want = leibniz_det(rows)
    assert det_bareiss(rows) == want
    assert det_exact(rows) == want


def test_det_exact_on_larger_sparse_matrices():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(6, 12)
        rows = [[rng.choice((0, 0, 0, 1, -1, 2)) for _ in range(n)] for _ in range(n)]
        assert det_exact(rows) == det_bareiss(rows)


# -- verification -----------------------------------------------------------

def test_verify_examples():
    assert verify_charmap(polygon(3), cols(INT, (1, 0), (0, 1), (-1, -1)))
    O = octahedron()
    M = cols(INT, (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1))
    assert verify_charmap(O, M)
    bad = verify_charmap(polygon(5), cols(INT, *[(1, 0)] * 5))
    assert not bad and bad.failing_facet == ("1", "2")


def test_verify_requires_unimodular_not_just_nonsingular():
    assert not verify_charmap(polygon(3), cols(INT, (2, 0), (0, 1), (1, 1)))
    assert verify_charmap(polygon(3), cols(GF2, (1, 0), (0, 1), (1, 1)))


def test_verify_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        verify_charmap(polygon(5), cols(INT, (1, 0), (0, 1)))
    with pytest.raises(ValueError):
        CharMatrix(GF2, ((2, 0),))


# -- search -----------------------------------------------------------------

def brute_first(K, ring, bound):
    values = (0, 1) if ring == GF2 else range(-bound, bound + 1)
    cands = [c for c in itertools.product(values, repeat=K.n) if any(c)]
    for choice in itertools.product(cands, repeat=K.m):
        ok = True
        for f in K.facets:
            d = leibniz_det([[choice[i][r] for i in f] for r in range(K.n)])
            if (d % 2 == 0) if ring == GF2 else abs(d) != 1:
                ok = False
                break
        if ok:
            return list(choice)
    return None


@pytest.mark.parametrize("K,ring,bound", [
    (polygon(3), INT, 1), (polygon(4), INT, 1), (polygon(4), GF2, 1), (polygon(5), GF2, 1),
    (polygon(3), INT, 2),
])
def test_search_is_lexicographically_first(K, ring, bound):
    M = search_charmap(K, ring, bound)
    assert M.columns == brute_first(K, ring, bound)


def test_search_examples():
    P5 = search_charmap(polygon(5), GF2)
    assert verify_charmap(polygon(5), P5)
    assert search_charmap(polygon(4), GF2).columns == [(0, 1), (1, 0), (0, 1), (1, 0)]
    C = search_charmap(cyclic_boundary(4, 7), INT, 1)
    assert C is not None and verify_charmap(cyclic_boundary(4, 7), C)


def test_search_reports_absence():
    # complete graph on 4 vertices: needs 4 pairwise independent vectors in GF(2)^2, which has only 3
    from plseeds import validate_complex

    K4 = validate_complex([list(p) for p in itertools.combinations("abcd", 2)])
    assert search_charmap(K4, GF2) is None
    assert search_charmap(K4, INT, 1) is None
    assert find_certificate(K4) is None


def test_search_deterministic_across_workers():
    K = cyclic_boundary(4, 7)
    texts = {dumps(certificate_to_dict(K, search_charmap(K, INT, 1, workers=w))) for w in (1, 2, 4)}
    assert len(texts) == 1


def test_find_certificate_escalates():
    assert find_certificate(polygon(5)).ring == INT
    for K in corpus_seeds():
        M = certificate(K)
        assert M is not None and verify_charmap(K, M), K.name
        assert verify_charmap(K, M.mod2())


# -- propagation ------------------------------------------------------------

def test_wedge_propagate_triangle():
    T = polygon(3)
    M = cols(INT, (1, 0), (0, 1), (-1, -1))
    W = wedge_propagate(T, M, "1")
    assert W.shape == (3, 4)
    assert W.columns[0] == (1, 1, 0) and W.columns[1] == (1, 0, 0)
    assert verify_charmap(wedge(T, "1"), W)


def test_wedge_propagate_rejects_bad_input():
    with pytest.raises(InvalidInputCertificate):
        wedge_propagate(polygon(5), cols(INT, *[(1, 0)] * 5), "1")


def test_j_propagate_identity_and_orders():
    P5 = polygon(5)
    M = find_certificate(P5)
    KJ, MJ = j_propagate(P5, M, (1,) * 5)
    assert KJ == P5 and MJ == M
    for K in corpus_seeds():
        K = K.integer_labels()
        M = certificate(K)
        for a, b in itertools.combinations(K.labels[:4], 2):
            W1 = wedge_propagate(K, M, a)
            W12 = wedge_propagate(wedge(K, a), W1, b)
            W2 = wedge_propagate(K, M, b)
            W21 = wedge_propagate(wedge(K, b), W2, a)
            target = wedge(wedge(K, a), b)
            assert verify_charmap(target, W12)
            assert verify_charmap(target, W21)


def test_stellar_propagate_examples():
    T = polygon(3)
    M = cols(INT, (1, 0), (0, 1), (-1, -1))
    S = stellar_propagate(T, M, ["1", "2"])
    assert S.columns[-1] == (1, 1)
    assert verify_charmap(stellar_subdivision(T, ["1", "2"]), S)
    single = stellar_propagate(T, M, ["2"], new_label="z")
    assert verify_charmap(stellar_subdivision(T, ["2"], "z"), single)
    with pytest.raises(NotAFace):
        stellar_propagate(polygon(5), find_certificate(polygon(5)), ["1", "3"])


def test_stellar_propagate_on_doubled_cyclic():
    C = cyclic_boundary(4, 7)
    M = find_certificate(C)
    J = (2, 2, 1, 1, 1, 1, 1)
    KJ, MJ = j_propagate(C, M, J)
    sigma = assembled_face(C, J, (0,) * 7, KJ)
    out = stellar_propagate(KJ, MJ, sigma)
    assert verify_charmap(stellar_subdivision(KJ, sigma), out)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=5, max_size=5), st.integers(0, 10 ** 6))
def test_propagation_soundness(J, seed):
    P5 = polygon(5)
    KJ, MJ = j_propagate(P5, find_certificate(P5), J)
    assert verify_charmap(KJ, MJ) and verify_charmap(KJ, MJ.mod2())
    facet = KJ.face_labels(KJ.facets[seed % len(KJ.facets)])
    rng = random.Random(seed)
    sigma = rng.sample(facet, rng.randint(2, len(facet)))
    S = stellar_subdivision(KJ, sigma)
    MS = stellar_propagate(KJ, MJ, sigma)
    assert verify_charmap(S, MS) and verify_charmap(S, MS.mod2())


# -- inequality -------------------------------------------------------------

def test_inequality_reports():
    P5 = polygon(5)
    r = picard_and_inequality(P5, True, find_certificate(P5))
    assert (r.picard, r.m, r.bound, r.status) == (3, 5, 7, "strict")
    C = cyclic_boundary(4, 7)
    r = picard_and_inequality(C, True, find_certificate(C))
    assert (r.picard, r.m, r.status) == (3, 7, "tight") and r.tight
    KJ, MJ = j_propagate(P5, find_certificate(P5), (2, 2, 1, 1, 1))
    S = stellar_subdivision(KJ, ["1", "2"])
    MS = stellar_propagate(KJ, MJ, ["1", "2"])
    r = picard_and_inequality(S, bool(is_seed(S)), MS)
    assert (r.picard, r.m, r.bound, r.status) == (4, 8, 15, "strict")


def test_inequality_out_of_range_and_uncertified():
    sq = polygon(4)
    assert picard_and_inequality(sq, True, find_certificate(sq)).status == "out-of-range"
    P5 = polygon(5)
    assert picard_and_inequality(P5, True, None).status == "uncertified"
    assert picard_and_inequality(P5, False, find_certificate(P5)).status == "not-seed"
    gf = search_charmap(P5, GF2)
    assert picard_and_inequality(P5, True, gf).status == "uncertified"
    assert picard_and_inequality(P5, True, find_certificate(P5)).as_dict()["buchstaber"] == {"lower": 3, "upper": 3}


def test_wedges_of_certified_spheres_stay_certified():
    for K in corpus_seeds():
        K = K.integer_labels()
        M = certificate(K)
        for v in K.labels:
            assert verify_charmap(wedge(K, v), wedge_propagate(K, M, v))
        J = tuple(2 if i < 2 else 1 for i in range(K.m))
        KJ, MJ = j_propagate(K, M, J)
        assert KJ == j_construction(K, J) and verify_charmap(KJ, MJ)
