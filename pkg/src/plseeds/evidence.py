"""Sphere evidence: pseudomanifold and connectivity checks, Euler characteristic, rational Betti numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .complex import (
    BudgetExceeded,
    FVector,
    SimplicialComplex,
    bits,
    default_face_budget,
    f_vector,
    faces_by_size,
)


@dataclass(frozen=True)
class ManifoldFlags:
    pseudomanifold: bool
    strongly_connected: bool
    bad_ridge: tuple[str, ...] | None = None


def pseudomanifold_and_connectivity(K: SimplicialComplex) -> ManifoldFlags:
    """Ridge incidences and facet-adjacency connectivity, from the facet list alone."""
    ridges: dict[int, list[int]] = {}
    for pos, f in enumerate(K.masks):
        rest = f
        while rest:
            low = rest & -rest
            rest ^= low
            ridges.setdefault(f ^ low, []).append(pos)
    bad = next((r for r, owners in sorted(ridges.items()) if len(owners) != 2), None)
    parent = list(range(len(K.facets)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for owners in ridges.values():
        a = find(owners[0])
        for b in owners[1:]:
            parent[find(b)] = a
    roots = {find(i) for i in range(len(parent))}
    return ManifoldFlags(
        pseudomanifold=bad is None,
        strongly_connected=len(roots) == 1,
        bad_ridge=None if bad is None else K.face_labels(bits(bad)),
    )


def _rank_over_q(columns: list[dict[int, int]]) -> int:
    """Rank of a sparse integer matrix over Q (column reduction, exact integers).

    Each column maps row index to a nonzero entry. Columns are reduced
    against earlier pivots on their lowest row; rows are rescaled by content
    so entries stay small on boundary matrices.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = dict(col)
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            a, b = other[low], col[low]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            merged = {r: fb * x for r, x in col.items()}
            for r, x in other.items():
                y = merged.get(r, 0) - fa * x
                if y:
                    merged[r] = y
                else:
                    merged.pop(r, None)
            c = 0
            for x in merged.values():
                c = gcd(c, x)
            if c > 1:
                merged = {r: x // c for r, x in merged.items()}
            col = merged
    return rank


def boundary_columns(levels: list[list[int]], k: int) -> list[dict[int, int]]:
    """Boundary map from faces of size k+1 to faces of size k, sorted-vertex orientation."""
    index = {face: i for i, face in enumerate(levels[k - 1])}
    out = []
    for face in levels[k]:
        verts = bits(face)
        out.append({index[face ^ (1 << v)]: (-1) ** pos for pos, v in enumerate(verts)})
    return out


def _compose_is_zero(upper: list[dict[int, int]], lower: list[dict[int, int]]) -> bool:
    for col in upper:
        acc: dict[int, int] = {}
        for r, x in col.items():
            for rr, y in lower[r].items():
                acc[rr] = acc.get(rr, 0) + x * y
        if any(acc.values()):
            return False
    return True


RANK_FACE_LIMIT = 60_000


def element_matching_critical(levels: list[list[int]], m: int) -> list[int] | None:
    """Critical cell counts per face size (index 0 = empty face) of a sequential element matching.

    For each vertex v in turn, every unmatched face σ ∌ v is paired with σ ∪ {v}
    when that is an unmatched face too. Such matchings are acyclic, so the
    critical counts bound reduced Betti numbers and equal them when no two
    critical cells sit in adjacent dimensions. Returns None when m > 63.
    """
    if m > 63:
        return None
    arrs = [np.array([0], dtype=np.uint64)] + [np.array(sorted(lv), dtype=np.uint64) for lv in levels]
    alive = [np.ones(len(a), dtype=bool) for a in arrs]
    for v in range(m):
        bit = np.uint64(1 << v)
        for k in range(len(arrs) - 1):
            low, high = arrs[k], arrs[k + 1]
            if not len(high):
                continue
            cand = np.nonzero(alive[k] & ((low & bit) == 0))[0]
            if not len(cand):
                continue
            up = low[cand] | bit
            pos = np.searchsorted(high, up)
            pos_ok = pos < len(high)
            hit = np.zeros(len(cand), dtype=bool)
            hit[pos_ok] = high[pos[pos_ok]] == up[pos_ok]
            hit[hit] = alive[k + 1][pos[hit]]
            alive[k][cand[hit]] = False
            alive[k + 1][pos[hit]] = False
    return [int(a.sum()) for a in alive]


def _betti_by_rank(K: SimplicialComplex, levels: list[list[int]]) -> tuple[int, ...]:
    ranks = [0] * (K.n + 1)  # ranks[k]: boundary from size k+1 faces to size k faces
    prev = None
    for k in range(1, K.n):
        cols = boundary_columns(levels, k)
        if prev is not None:
            assert _compose_is_zero(cols, prev), "boundary of boundary is nonzero"
        ranks[k] = _rank_over_q(cols)
        prev = cols
    return tuple(len(levels[k]) - ranks[k] - ranks[k + 1] for k in range(K.n))


def _betti_by_matching(K: SimplicialComplex, levels: list[list[int]]) -> tuple[int, ...] | None:
    crit = element_matching_critical(levels, K.m)
    if crit is None:
        return None
    sizes = [k for k, c in enumerate(crit) if c]
    if any(b - a == 1 for a, b in zip(sizes, sizes[1:])):
        return None
    reduced = crit[1:]
    betti = list(reduced)
    if crit[0] == 0:
        betti[0] += 1  # the empty face was matched: unreduced b0 = reduced b0 + 1
    return tuple(betti)


def homology_betti(K: SimplicialComplex, face_budget: int | None = None, method: str = "auto",
                   levels: list[list[int]] | None = None) -> tuple[int, ...]:
    """Unreduced Betti numbers over Q.

    ``method`` is "rank" (exact ranks of the boundary matrices), "morse"
    (critical cells of an acyclic matching; None-safe, falls back to rank
    when inconclusive) or "auto" (rank for small complexes, else morse).
    Raises BudgetExceeded when the complex has more faces than the budget.
    """
    if K.n == 0:
        return ()
    if levels is None:
        levels = faces_by_size(K, face_budget)
    total = sum(len(lv) for lv in levels)
    if method == "rank" or (method == "auto" and total <= RANK_FACE_LIMIT):
        return _betti_by_rank(K, levels)
    if method not in ("morse", "auto"):
        raise ValueError(f"unknown method {method!r}")
    betti = _betti_by_matching(K, levels)
    if betti is None:
        betti = _betti_by_rank(K, levels)
    return betti


def sphere_betti(n: int) -> tuple[int, ...]:
    """Unreduced Betti numbers of the (n-1)-sphere."""
    if n == 1:
        return (2,)
    return (1,) + (0,) * (n - 2) + (1,)


@dataclass
class EvidenceReport:
    pure: bool
    pseudomanifold: bool
    strongly_connected: bool
    euler: str  # "ok" | "failed" | "skipped"
    homology: str
    f_vector: tuple[int, ...] = ()
    euler_characteristic: int | None = None
    betti: tuple[int, ...] | None = None
    reasons: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """No failing check (skips allowed)."""
        return (
            self.pure and self.pseudomanifold and self.strongly_connected
            and self.euler != "failed" and self.homology != "failed"
        )

    def as_dict(self) -> dict:
        return {
            "pure": self.pure,
            "pseudomanifold": self.pseudomanifold,
            "strongly_connected": self.strongly_connected,
            "euler": self.euler,
            "homology": self.homology,
            "f_vector": list(self.f_vector),
            "euler_characteristic": self.euler_characteristic,
            "betti": None if self.betti is None else list(self.betti),
            "reasons": list(self.reasons),
            "passed": self.passed,
        }


def sphere_evidence_report(K: SimplicialComplex, face_budget: int | None = None) -> EvidenceReport:
    budget = default_face_budget() if face_budget is None else face_budget
    reasons: list[str] = []
    flags = pseudomanifold_and_connectivity(K)
    if not flags.pseudomanifold:
        reasons.append(f"ridge {flags.bad_ridge} does not lie in exactly two facets")
    if not flags.strongly_connected:
        reasons.append("facet adjacency graph is disconnected")
    n = K.n
    try:
        levels = faces_by_size(K, budget)
    except BudgetExceeded:
        levels = None
    fv = f_vector(K, budget) if levels is None else FVector(tuple(len(lv) for lv in levels))
    chi = fv.euler
    expected_chi = 1 + (-1) ** (n - 1)
    if chi is None:
        euler = "skipped"
        reasons.append(f"euler skipped: face count exceeds budget {budget}")
    elif chi == expected_chi:
        euler = "ok"
    else:
        euler = "failed"
        reasons.append(f"euler characteristic {chi}, sphere needs {expected_chi}")
    betti = None
    if levels is None:
        homology = "skipped"
        reasons.append(f"homology skipped: face count exceeds budget {budget}")
    else:
        betti = homology_betti(K, budget, levels=levels)
        if betti == sphere_betti(n):
            homology = "ok"
        else:
            homology = "failed"
            reasons.append(f"betti numbers {betti}, sphere needs {sphere_betti(n)}")
    return EvidenceReport(
        pure=True,
        pseudomanifold=flags.pseudomanifold,
        strongly_connected=flags.strongly_connected,
        euler=euler,
        homology=homology,
        f_vector=fv.counts,
        euler_characteristic=chi,
        betti=betti,
        reasons=reasons,
    )
