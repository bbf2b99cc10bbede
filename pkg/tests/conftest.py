"""Shared corpus and brute-force oracles.

The oracles work on frozensets of labels and enumerate subsets directly,
so they share no code with the bitmask routines they check.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

import pytest

from plseeds import (
    boundary_of_simplex,
    j_construction,
    stellar_subdivision,
    suspension,
    validate_complex,
    wedge,
)
from plseeds.family import crosspolytope_boundary, cyclic_boundary, octahedron, polygon, remark_seed


# -- corpus -----------------------------------------------------------------

@lru_cache(maxsize=None)
def corpus() -> tuple:
    """Small PL spheres built from the base spheres by the library operations."""
    P5 = polygon(5)
    items = [
        polygon(3),
        polygon(4),
        P5,
        polygon(6),
        octahedron(),
        crosspolytope_boundary(4),
        cyclic_boundary(4, 7),
        cyclic_boundary(3, 6),
        boundary_of_simplex(["a", "b", "c", "d"]),
        wedge(P5, "1"),
        suspension(P5),
        stellar_subdivision(P5, ["1", "2"]),
        j_construction(P5, (2, 2, 1, 1, 1)),
        remark_seed().complex,
    ]
    return tuple(items)


@lru_cache(maxsize=None)
def corpus_seeds() -> tuple:
    from plseeds.classify import is_seed

    return tuple(K for K in corpus() if is_seed(K))


_CERTS: dict = {}


def certificate(K):
    """find_certificate with a per-session cache keyed by the labeled complex."""
    key = (K.labels, K.facets)
    if key not in _CERTS:
        from plseeds.charmap import find_certificate

        _CERTS[key] = find_certificate(K)
    return _CERTS[key]


# -- acceptance summary -----------------------------------------------------

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def record(request):
    """Call record(criterion, ok, detail) once per criterion; lines are echoed at the end of the run."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def _record(criterion: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion:>2}: {detail}"
        lines.append((criterion, line))
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


# -- oracles ----------------------------------------------------------------

def label_facets(K) -> set[frozenset]:
    return {frozenset(s) for s in K.facet_label_sets()}


def all_faces(facets) -> set[frozenset]:
    """Every face (including the empty one) of the closure of ``facets``."""
    out = set()
    for f in facets:
        f = sorted(f)
        for r in range(len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, r))
    return out


def maximal(faces) -> set[frozenset]:
    faces = set(faces)
    return {f for f in faces if not any(f < g for g in faces)}


def brute_minimal_non_faces(K) -> set[frozenset]:
    faces = all_faces(label_facets(K))
    out = set()
    for r in range(1, K.m + 1):
        for c in combinations(K.labels, r):
            s = frozenset(c)
            if s not in faces and all(s - {x} in faces for x in s):
                out.add(s)
    return out


def brute_f_vector(K) -> tuple[int, ...]:
    counts = [0] * K.n
    for f in all_faces(label_facets(K)):
        if f:
            counts[len(f) - 1] += 1
    return tuple(counts)


def brute_isomorphic(K, L) -> bool:
    if K.m != L.m or len(K.facets) != len(L.facets):
        return False
    target = label_facets(L)
    for perm in permutations(L.labels):
        phi = dict(zip(K.labels, perm))
        if {frozenset(phi[x] for x in f) for f in label_facets(K)} == target:
            return True
    return False


def brute_wedge(K, v, c) -> set[frozenset]:
    """Facets of I * lk(v) union dI * {faces avoiding v}, straight from the definition."""
    faces = all_faces(label_facets(K))
    lk = {f - {v} for f in faces if v in f}
    avoid = {f for f in faces if v not in f}
    new = {f | {v, c} for f in lk} | {f | {v} for f in avoid} | {f | {c} for f in avoid}
    return maximal(new)


def brute_stellar(K, sigma, w) -> set[frozenset]:
    """Facets of (K minus st(sigma)) union w * d(sigma) * lk(sigma)."""
    sigma = frozenset(sigma)
    faces = all_faces(label_facets(K))
    kept = {f for f in faces if not sigma <= f}
    lk = {f - sigma for f in faces if sigma <= f}
    bd = {frozenset(c) for r in range(len(sigma)) for c in combinations(sorted(sigma), r)}
    cone = {a | b | {w} for a in bd for b in lk}
    return maximal(kept | cone)


def brute_covering_pairs(K) -> set[frozenset]:
    facets = label_facets(K)
    return {
        frozenset(p) for p in combinations(K.labels, 2) if all(set(p) & f for f in facets)
    }


def leibniz_det(rows) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def fraction_rank(rows) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def brute_betti(K) -> tuple[int, ...]:
    """Unreduced Betti numbers from dense boundary matrices over Q."""
    faces = [f for f in all_faces(label_facets(K)) if f]
    order = {lab: i for i, lab in enumerate(K.labels)}
    by_size: dict[int, list[tuple]] = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(tuple(sorted(f, key=order.__getitem__)))
    for lv in by_size.values():
        lv.sort(key=lambda t: [order[x] for x in t])
    ranks = {}
    for k in range(2, K.n + 1):
        lower = {f: i for i, f in enumerate(by_size[k - 1])}
        mat = [[0] * len(by_size[k]) for _ in lower]
        for j, f in enumerate(by_size[k]):
            for pos in range(k):
                mat[lower[f[:pos] + f[pos + 1:]]][j] = (-1) ** pos
        ranks[k] = fraction_rank(mat)
    return tuple(len(by_size[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(1, K.n + 1))


def raw(*facets):
    """validate_complex on label strings like "12", "23"."""
    return validate_complex([list(f) for f in facets])
