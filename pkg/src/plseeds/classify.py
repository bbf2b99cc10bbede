"""Covering pairs, wedged edges, suspended pairs and seed decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import ComplexError, SimplicialComplex, are_isomorphic, boundary_of_simplex, join, link
from .operations import j_construction, wedge

WEDGED_EDGE = "wedged-edge"
SUSPENDED_PAIR = "suspended-pair"


class NotCoveringPair(ComplexError):
    pass


class WitnessVerificationFailed(RuntimeError):
    """A covering pair whose witness does not rebuild the complex.

    On a PL sphere this cannot happen; seeing it means either the input is
    not a sphere or there is a bug.
    """


@dataclass(frozen=True)
class PairClassification:
    pair: tuple[str, str]
    kind: str
    witness: SimplicialComplex

    @property
    def is_wedged_edge(self) -> bool:
        return self.kind == WEDGED_EDGE


@dataclass(frozen=True)
class Verdict:
    value: bool
    reason: str
    pair: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class SeedDecomposition:
    seed: SimplicialComplex
    J: tuple[int, ...]
    label_map: dict[str, tuple[str, int]] = field(default_factory=dict)

    def rebuild(self) -> SimplicialComplex:
        return j_construction(self.seed, self.J)


def covering_pairs(K: SimplicialComplex) -> list[tuple[int, int]]:
    """Index pairs (i < j) such that every facet contains i or j."""
    m = K.m
    everything = (1 << len(K.facets)) - 1
    inc = [0] * m
    for pos, f in enumerate(K.facets):
        for v in f:
            inc[v] |= 1 << pos
    return [(i, j) for i in range(m) for j in range(i + 1, m) if inc[i] | inc[j] == everything]


def covering_label_pairs(K: SimplicialComplex) -> list[tuple[str, str]]:
    return [(K.labels[i], K.labels[j]) for i, j in covering_pairs(K)]


def _pair_indices(K: SimplicialComplex, pair) -> tuple[int, int]:
    a, b = K.face(pair)
    return a, b


def classify_pair(K: SimplicialComplex, pair) -> PairClassification:
    """Decide whether a covering pair is a wedged edge or a suspended pair, and verify it.

    For a wedged edge {v, w} the witness is lk(w) and wedging it at v with
    copy w must give back K; for a suspended pair the witness is lk(v) and
    its suspension on {v, w} must give back K (both up to isomorphism).
    """
    a, b = _pair_indices(K, pair)
    if (a, b) not in covering_pairs(K):
        raise NotCoveringPair(f"{K.face_labels((a, b))} does not meet every facet")
    v, w = K.labels[a], K.labels[b]
    if K.is_face((a, b)):
        base = link(K, [w])
        rebuilt = wedge(base, v, w)
        kind = WEDGED_EDGE
    else:
        base = link(K, [v])
        rebuilt = join(base, boundary_of_simplex([v, w]))
        kind = SUSPENDED_PAIR
    if are_isomorphic(rebuilt, K) is None:
        raise WitnessVerificationFailed(f"{kind} {{{v},{w}}} does not reconstruct the complex")
    return PairClassification((v, w), kind, base)


def wedged_edges(K: SimplicialComplex) -> list[tuple[int, int]]:
    return [p for p in covering_pairs(K) if K.is_face(p)]


def suspended_pairs(K: SimplicialComplex) -> list[tuple[int, int]]:
    return [p for p in covering_pairs(K) if not K.is_face(p)]


def is_seed(K: SimplicialComplex) -> Verdict:
    edges = wedged_edges(K)
    if edges:
        pair = K.face_labels(edges[0])
        return Verdict(False, f"wedged edge {{{pair[0]},{pair[1]}}}", pair)
    return Verdict(True, "no covering pair is a face")


def is_suspended(K: SimplicialComplex) -> Verdict:
    pairs = suspended_pairs(K)
    if pairs:
        pair = K.face_labels(pairs[0])
        return Verdict(True, f"suspended pair {{{pair[0]},{pair[1]}}}", pair)
    return Verdict(False, "no covering pair is a non-face")


def seed_decomposition(K: SimplicialComplex) -> SeedDecomposition:
    """Write K as K'(J) with K' free of wedged edges.

    Each step takes the lexicographically least wedged edge {v, w}, replaces
    the complex by lk(w) and folds w's multiplicity into v.
    """
    groups: dict[str, list[str]] = {lab: [lab] for lab in K.labels}
    cur = K
    while True:
        edges = wedged_edges(cur)
        if not edges:
            break
        v, w = cur.face_labels(edges[0])
        cur = link(cur, [w])
        groups[v].extend(groups.pop(w))
    J = tuple(len(groups[lab]) for lab in cur.labels)
    label_map = {orig: (lab, k) for lab in cur.labels for k, orig in enumerate(groups[lab])}
    return SeedDecomposition(cur.named(K.name and f"seed({K.name})"), J, label_map)
