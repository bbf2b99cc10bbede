"""Pure simplicial complexes stored as a label table plus a sorted facet list.

Faces are tuples of strictly increasing vertex indices into the label table.
Most set arithmetic runs on integer bitmasks (bit ``i`` is vertex ``i``).
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Face = tuple[int, ...]

DEFAULT_FACE_BUDGET = 10_000_000
FACE_BUDGET_ENV = "PLSEEDS_FACE_BUDGET"


def default_face_budget() -> int:
    raw = os.environ.get(FACE_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_FACE_BUDGET


class ComplexError(ValueError):
    """Base class for malformed complexes and invalid operation arguments."""


class EmptyInput(ComplexError):
    pass


class NotPure(ComplexError):
    pass


class NonMaximalFacet(ComplexError):
    pass


class InvalidLabel(ComplexError):
    pass


class NotAFace(ComplexError):
    pass


class NotAVertex(ComplexError):
    pass


class LabelCollision(ComplexError):
    pass


class BudgetExceeded(ComplexError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise InvalidLabel(f"label must be a nonempty string, got {label!r}")
    if any(ch.isspace() for ch in label) or "," in label:
        raise InvalidLabel(f"label {label!r} contains whitespace or a comma")
    return label


def mask_of(face: Iterable[int]) -> int:
    out = 0
    for i in face:
        out |= 1 << i
    return out


def bits(mask: int) -> Face:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class SimplicialComplex:
    labels: tuple[str, ...]
    facets: tuple[Face, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.facets:
            raise EmptyInput("the void complex is not representable")
        if len(set(self.labels)) != len(self.labels):
            raise LabelCollision(f"duplicate labels in {self.labels}")
        for lab in self.labels:
            check_label(lab)
        m = len(self.labels)
        size = len(self.facets[0])
        used = 0
        for f in self.facets:
            if len(f) != size:
                raise NotPure(f"facets {self.facets[0]} and {f} differ in size")
            if any(b <= a for a, b in zip(f, f[1:])):
                raise ComplexError(f"facet {f} is not strictly increasing")
            if f and (f[0] < 0 or f[-1] >= m):
                raise ComplexError(f"facet {f} indexes outside the label table")
            used |= mask_of(f)
        if used != (1 << m) - 1:
            ghosts = [self.labels[i] for i in range(m) if not used >> i & 1]
            raise ComplexError(f"ghost vertices {ghosts}")
        if list(self.facets) != sorted(set(self.facets)):
            raise ComplexError("facet list must be sorted and duplicate-free")

    # -- basic data ---------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        """Facet cardinality (dimension + 1)."""
        return len(self.facets[0])

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def picard(self) -> int:
        return self.m - self.n

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise NotAVertex(f"{label!r} is not a vertex of {self.name or 'the complex'}") from None

    def face(self, spec: Iterable[int | str]) -> Face:
        """Normalize a face given by labels or indices to a sorted index tuple."""
        idx = set()
        for x in spec:
            if isinstance(x, str):
                idx.add(self.index(x))
            else:
                if not 0 <= x < self.m:
                    raise NotAVertex(f"index {x} out of range")
                idx.add(int(x))
        return tuple(sorted(idx))

    def face_labels(self, face: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in face)

    def facet_label_sets(self) -> list[frozenset[str]]:
        return [frozenset(self.face_labels(f)) for f in self.facets]

    def is_face_mask(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.masks)

    def is_face(self, spec: Iterable[int | str]) -> bool:
        return self.is_face_mask(mask_of(self.face(spec)))

    def require_face(self, spec: Iterable[int | str]) -> Face:
        face = self.face(spec)
        if not self.is_face_mask(mask_of(face)):
            raise NotAFace(f"{self.face_labels(face)} is not a face")
        return face

    # -- derived copies -----------------------------------------------------
    def named(self, name: str) -> SimplicialComplex:
        return SimplicialComplex(self.labels, self.facets, name)

    def relabel(self, mapping: dict[str, str] | Sequence[str], name: str | None = None) -> SimplicialComplex:
        if isinstance(mapping, dict):
            new = tuple(mapping.get(lab, lab) for lab in self.labels)
        else:
            new = tuple(mapping)
            if len(new) != self.m:
                raise ComplexError("relabeling length mismatch")
        return SimplicialComplex(new, self.facets, self.name if name is None else name)

    def integer_labels(self, name: str | None = None) -> SimplicialComplex:
        """Rename vertices to "1".."m" in label-table order."""
        return self.relabel([str(i + 1) for i in range(self.m)], name)

    def same_complex(self, other: SimplicialComplex) -> bool:
        """Equality as labeled complexes, ignoring label-table order."""
        return set(self.labels) == set(other.labels) and set(self.facet_label_sets()) == set(
            other.facet_label_sets()
        )

    def fresh_label(self, base: str) -> str:
        if base not in self._index:
            return base
        k = 1
        while f"{base}'{k}" in self._index:
            k += 1
        return f"{base}'{k}"

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(self.face_labels(f)) + "}" for f in self.facets[:6])
        more = ", ..." if len(self.facets) > 6 else ""
        return f"SimplicialComplex({self.name or '?'}: m={self.m}, dim={self.dim}, [{shown}{more}])"


EMPTY = SimplicialComplex((), ((),), "empty")


def from_masks(label_pool: Sequence[str], facet_masks: Iterable[int], name: str = "") -> SimplicialComplex:
    """Build a complex from facet bitmasks over ``label_pool``; unused labels are dropped."""
    uniq = set(facet_masks)
    if not uniq:
        raise EmptyInput("no facets")
    used = 0
    for f in uniq:
        used |= f
    keep = bits(used)
    remap = {old: new for new, old in enumerate(keep)}
    facets = sorted(tuple(remap[i] for i in bits(f)) for f in uniq)
    return SimplicialComplex(tuple(label_pool[i] for i in keep), tuple(facets), name)


def validate_complex(raw_facets: Iterable[Iterable[str]], name: str = "") -> SimplicialComplex:
    """Normalize a list of label sets into a canonical complex.

    The label table follows first appearance in the input; duplicate facets
    are merged; impure input and facets contained in other facets are rejected.
    """
    raw = [list(f) for f in raw_facets]
    if not raw:
        raise EmptyInput("facet list is empty")
    pool: list[str] = []
    seen: dict[str, int] = {}
    masks = []
    for f in raw:
        mask = 0
        for lab in f:
            lab = str(lab)
            check_label(lab)
            if lab not in seen:
                seen[lab] = len(pool)
                pool.append(lab)
            mask |= 1 << seen[lab]
        masks.append(mask)
    uniq = list(dict.fromkeys(masks))
    for a in uniq:
        for b in uniq:
            if a != b and a & b == a:
                raise NonMaximalFacet(
                    f"facet {sorted(pool[i] for i in bits(a))} lies inside {sorted(pool[i] for i in bits(b))}"
                )
    sizes = {popcount(f) for f in uniq}
    if len(sizes) > 1:
        raise NotPure(f"facet cardinalities {sorted(sizes)} differ")
    return from_masks(pool, uniq, name)


# -- section 2 primitives ----------------------------------------------------

def _closure_facets(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of a family of sets."""
    uniq = sorted(set(masks), key=popcount, reverse=True)
    out: list[int] = []
    for f in uniq:
        if not any(f & g == f for g in out):
            out.append(f)
    return out


def star(K: SimplicialComplex, sigma: Iterable[int | str]) -> SimplicialComplex:
    face = K.require_face(sigma)
    s = mask_of(face)
    return from_masks(K.labels, [f for f in K.masks if f & s == s], K.name and f"st({K.name})")


def link(K: SimplicialComplex, sigma: Iterable[int | str]) -> SimplicialComplex:
    """Link of a face; the link of a facet is the complex {∅}."""
    face = K.require_face(sigma)
    s = mask_of(face)
    parts = _closure_facets(f & ~s for f in K.masks if f & s == s)
    if parts == [0]:
        return EMPTY
    return from_masks(K.labels, parts, K.name and f"lk({K.name})")


def join(K: SimplicialComplex, L: SimplicialComplex, rename: bool = False) -> SimplicialComplex:
    """Join of two complexes on disjoint label sets.

    With ``rename=True`` colliding labels of ``L`` get a fresh suffix instead
    of raising :class:`LabelCollision`.
    """
    clash = set(K.labels) & set(L.labels)
    l_labels = list(L.labels)
    if clash:
        if not rename:
            raise LabelCollision(f"labels {sorted(clash)} occur in both complexes")
        taken = set(K.labels) | set(L.labels)
        for i, lab in enumerate(l_labels):
            if lab in clash:
                k = 1
                while f"{lab}'{k}" in taken:
                    k += 1
                l_labels[i] = f"{lab}'{k}"
                taken.add(l_labels[i])
    pool = list(K.labels) + l_labels
    shift = K.m
    masks = [a | (b << shift) for a in K.masks for b in L.masks]
    return from_masks(pool, masks)


def boundary_of_simplex(labels: Sequence[str]) -> SimplicialComplex:
    """All proper subsets of a simplex; a single vertex gives {∅}."""
    labels = list(labels)
    if not labels:
        raise EmptyInput("boundary of the empty simplex is void")
    k = len(labels)
    if k == 1:
        return EMPTY
    full = (1 << k) - 1
    return from_masks(labels, [full & ~(1 << i) for i in range(k)], f"bd{k - 1}")


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Minimal hitting sets of a family of bitmasks (Berge's incremental method)."""
    trs = [0]
    for e in sorted(set(edges), key=lambda x: (popcount(x), x)):
        if e == 0:
            return []
        keep = [t for t in trs if t & e]
        grow = set()
        for t in trs:
            if t & e:
                continue
            rest = e
            while rest:
                low = rest & -rest
                rest ^= low
                grow.add(t | low)
        cand = keep + sorted(grow, key=popcount)
        cand.sort(key=popcount)
        out: list[int] = []
        for t in cand:
            if not any(s & t == s for s in out):
                out.append(t)
        trs = out
    return trs


def minimal_non_face_masks(K: SimplicialComplex) -> list[int]:
    # S is a non-face iff it meets the complement of every facet
    full = K.full_mask
    return minimal_transversals(full & ~f for f in K.masks)


def minimal_non_faces(K: SimplicialComplex) -> list[Face]:
    return sorted(bits(x) for x in minimal_non_face_masks(K))


def from_minimal_non_faces(labels: Sequence[str], non_faces: Iterable[int], name: str = "") -> SimplicialComplex:
    """Complex on ``labels`` whose minimal non-faces are ``non_faces`` (bitmasks)."""
    full = (1 << len(labels)) - 1
    nf = list(non_faces)
    if not nf:
        return from_masks(labels, [full], name)
    covers = minimal_transversals(nf)
    return from_masks(labels, [full & ~c for c in covers], name)


# -- f-vector ----------------------------------------------------------------

@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]
    complete: bool = True

    @property
    def euler(self) -> int | None:
        if not self.complete:
            return None
        return sum((-1) ** i * c for i, c in enumerate(self.counts))


def _incidence(K: SimplicialComplex) -> list[int]:
    """Per vertex, the bitmask of facet positions containing it."""
    inc = [0] * K.m
    for pos, f in enumerate(K.facets):
        for v in f:
            inc[v] |= 1 << pos
    return inc


def iter_faces(K: SimplicialComplex, max_size: int | None = None):
    """Yield every nonempty face as a bitmask, depth-first in lexicographic order."""
    inc = _incidence(K)
    m = K.m
    limit = K.n if max_size is None else min(max_size, K.n)
    everything = (1 << len(K.facets)) - 1
    stack = [(0, everything, 0, 0)]
    while stack:
        mask, fs, start, size = stack.pop()
        if size == limit:
            continue
        for v in range(m - 1, start - 1, -1):
            sub = fs & inc[v]
            if sub:
                face = mask | (1 << v)
                yield face
                stack.append((face, sub, v + 1, size + 1))


def face_count_lower_bound(K: SimplicialComplex, stop_above: int | None = None, scan: int = 3000) -> int:
    """Cheap lower bound on the number of nonempty faces.

    Facet F contributes at least 2^|F| - 1 - sum over kept facets G of 2^|F∩G|
    new faces (union bound); facets with nonpositive contribution are skipped.
    Facets are visited with a stride so that early picks overlap little.
    """
    full = (1 << K.n) - 1
    masks = K.masks
    stride = 97
    order = (masks[i] for s in range(stride) for i in range(s, len(masks), stride))
    kept: list[int] = []
    total = 0
    for f in itertools.islice(order, scan):
        gain = full - sum(1 << popcount(f & g) for g in kept)
        if gain > 0:
            kept.append(f)
            total += gain
            if stop_above is not None and total > stop_above:
                break
    return total


def faces_by_size(K: SimplicialComplex, face_budget: int | None = None) -> list[list[int]]:
    """All nonempty faces as bitmasks grouped by cardinality (index 0 = vertices).

    Raises BudgetExceeded once more than ``face_budget`` faces are found, or
    up front when a single facet already has too many faces.
    """
    budget = default_face_budget() if face_budget is None else face_budget
    n = K.n
    if (1 << n) - 1 > budget:
        raise BudgetExceeded(f"a single facet has {2 ** n - 1} faces, over the budget of {budget}")
    if face_count_lower_bound(K, budget) > budget:
        raise BudgetExceeded(f"more than {budget} faces (lower bound)")
    levels: list[list[int]] = [[] for _ in range(n)]
    total = 0
    for face in iter_faces(K):
        levels[popcount(face) - 1].append(face)
        total += 1
        if total > budget:
            raise BudgetExceeded(f"more than {budget} faces")
    for lv in levels:
        lv.sort(key=lambda x: bits(x))
    return levels


def f_vector(K: SimplicialComplex, face_budget: int | None = None) -> FVector:
    """Face counts per dimension.

    Over the budget only f0, f1, f2 are counted and ``complete`` is False.
    """
    if K.n == 0:
        return FVector(())
    budget = default_face_budget() if face_budget is None else face_budget
    counts = [0] * K.n
    total = 0
    if (1 << K.n) - 1 <= budget and face_count_lower_bound(K, budget) <= budget:
        for face in iter_faces(K):
            counts[popcount(face) - 1] += 1
            total += 1
            if total > budget:
                break
        else:
            return FVector(tuple(counts))
    low = [0] * min(3, K.n)
    for face in iter_faces(K, max_size=3):
        low[popcount(face) - 1] += 1
    return FVector(tuple(low), complete=False)


# -- isomorphism ---------------------------------------------------------------

def _cooccurrence(K: SimplicialComplex) -> list[list[int]]:
    m = K.m
    co = [[0] * m for _ in range(m)]
    for f in K.facets:
        for a in f:
            row = co[a]
            for b in f:
                row[b] += 1
    return co


def are_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> dict[str, str] | None:
    """Lexicographically least label bijection carrying facets of K onto facets of L.

    Backtracks over images of K's vertices in table order; candidates are
    filtered by vertex degree and the sorted co-occurrence profile, and every
    partial map must preserve pairwise facet co-occurrence counts.
    """
    if (K.m, K.n, len(K.facets)) != (L.m, L.n, len(L.facets)):
        return None
    m = K.m
    if m == 0:
        return {}
    ck, cl = _cooccurrence(K), _cooccurrence(L)
    sig_k = [(ck[i][i], tuple(sorted(ck[i]))) for i in range(m)]
    sig_l = [(cl[i][i], tuple(sorted(cl[i]))) for i in range(m)]
    if sorted(sig_k) != sorted(sig_l):
        return None
    cands = [[j for j in range(m) if sig_l[j] == sig_k[i]] for i in range(m)]
    target = set(L.masks)
    image = [-1] * m
    used = [False] * m

    def extend(i: int) -> bool:
        if i == m:
            return all(mask_of(image[v] for v in f) in target for f in K.facets)
        row_k = ck[i]
        for j in cands[i]:
            if used[j]:
                continue
            row_l = cl[j]
            if any(row_k[a] != row_l[image[a]] for a in range(i)):
                continue
            image[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
        image[i] = -1
        return False

    if not extend(0):
        return None
    return {K.labels[i]: L.labels[image[i]] for i in range(m)}
