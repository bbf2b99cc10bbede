"""Characteristic matrices: exact verification, search, and propagation along wedges and subdivisions."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import ComplexError, SimplicialComplex, mask_of
from .operations import check_multiplicity, copy_label, stellar_subdivision, wedge

GF2 = "GF2"
INT = "Int"
RINGS = (GF2, INT)


class ShapeMismatch(ComplexError):
    pass


class InvalidInputCertificate(ComplexError):
    pass


@dataclass(frozen=True)
class CharMatrix:
    ring: str
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        if len({len(r) for r in self.rows}) > 1:
            raise ShapeMismatch("ragged matrix")
        if self.ring == GF2 and any(x not in (0, 1) for r in self.rows for x in r):
            raise ValueError("GF2 entries must be 0 or 1")

    @classmethod
    def from_columns(cls, ring: str, columns: Sequence[Sequence[int]]) -> CharMatrix:
        if not columns:
            raise ShapeMismatch("no columns")
        return cls(ring, tuple(zip(*columns)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.rows))

    def mod2(self) -> CharMatrix:
        return CharMatrix(GF2, tuple(tuple(x % 2 for x in r) for r in self.rows))


def det_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return sign * a[-1][-1]


def det_exact(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant, eliminating on unit pivots while any exist.

    Rows with a zero in the pivot column are left untouched, which keeps the
    sparse matrices met here cheap; the remaining block goes to Bareiss.
    """
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] in (1, -1)), None)
        if piv is None:
            rest = [row[k:] for row in a[k:]]
            acc = sign * det_bareiss(rest)
            for i in range(k):
                acc *= a[i][i]
            return acc
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        row_k = a[k]
        p = row_k[k]
        nz = [j for j in range(k + 1, n) if row_k[j]]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            if lead:
                f = lead * p  # p = +-1, so lead / p == lead * p
                for j in nz:
                    row_i[j] -= f * row_k[j]
                row_i[k] = 0
    out = sign
    for i in range(n):
        out *= a[i][i]
    return out


def gf2_independent(vectors: Iterable[int]) -> bool:
    """Whether bit-packed vectors are linearly independent over GF(2)."""
    basis: list[int] = []
    for x in vectors:
        for b in basis:
            x = min(x, x ^ b)
        if x == 0:
            return False
        basis.append(x)
    return True


def _pack_mod2(col: Sequence[int]) -> int:
    return mask_of(i for i, x in enumerate(col) if x % 2)


def facet_ok(ring: str, cols: Sequence[Sequence[int]]) -> bool:
    if ring == GF2:
        return len(cols) == len(cols[0]) and gf2_independent(_pack_mod2(c) for c in cols)
    return abs(det_exact(list(zip(*cols)))) == 1


@dataclass(frozen=True)
class CharmapVerdict:
    ok: bool
    failing_facet: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_shape(K: SimplicialComplex, M: CharMatrix) -> None:
    if M.shape != (K.n, K.m):
        raise ShapeMismatch(f"matrix is {M.shape[0]}x{M.shape[1]}, complex needs {K.n}x{K.m}")


def verify_charmap(K: SimplicialComplex, M: CharMatrix) -> CharmapVerdict:
    """True iff every facet's square column block is unimodular (Int) or invertible (GF2)."""
    _check_shape(K, M)
    cols = M.columns
    for f in K.facets:
        if not facet_ok(M.ring, [cols[i] for i in f]):
            return CharmapVerdict(False, K.face_labels(f))
    return CharmapVerdict(True)


def _candidates(ring: str, n: int, bound: int) -> list[tuple[int, ...]]:
    values = (0, 1) if ring == GF2 else tuple(range(-bound, bound + 1))
    return [c for c in itertools.product(values, repeat=n) if any(c)]


def search_charmap(K: SimplicialComplex, ring: str = INT, entry_bound: int = 1,
                   workers: int = 1) -> CharMatrix | None:
    """Lexicographically first characteristic matrix, or None after exhaustive search.

    Columns are assigned in label-table order with candidates in lexicographic
    order. A partial assignment is cut as soon as the assigned columns of some
    facet are dependent mod 2. When a column completes a facet over the
    integers, the determinant is linear in that column, so each candidate is
    tested by a dot product with the cofactor vector of the fixed columns.
    ``workers`` splits the first column's branches across threads; the answer
    does not depend on it.
    """
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    if ring == INT and entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    n, m = K.n, K.m
    cands = _candidates(ring, n, entry_bound)
    packed = [_pack_mod2(c) for c in cands]
    # per vertex v: facet prefixes ending at v, minus v itself (the already-fixed columns)
    partial: list[set[tuple[int, ...]]] = [set() for _ in range(m)]
    complete: list[set[tuple[int, ...]]] = [set() for _ in range(m)]
    for f in K.facets:
        for pos, v in enumerate(f):
            (complete if pos == len(f) - 1 else partial)[v].add(f[:pos])
    checks = [(sorted(partial[v] - complete[v]), sorted(complete[v])) for v in range(m)]
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    cand_arr = np.array(cands, dtype=np.int64)
    packed_arr = np.array(packed, dtype=np.int64)
    cofactor_memo: dict[tuple[int, ...], tuple[int, ...]] = {}

    def cofactor(fixed: tuple[int, ...]) -> tuple[int, ...]:
        """w with det[fixed columns, c] = <w, c> for every column c."""
        w = cofactor_memo.get(fixed)
        if w is None:
            cols = [cands[i] for i in fixed]
            w = tuple(det_exact(list(zip(*cols, e))) for e in unit)
            cofactor_memo[fixed] = w
        return w

    def span_mod2(vectors: list[int]) -> set[int]:
        span = {0}
        for x in vectors:
            span |= {y ^ x for y in span}
        return span

    def options(assign: list[int], v: int):
        """Candidate indices for column v, in order, that keep every facet prefix ending at v admissible."""
        part, full = checks[v]
        forbidden: set[int] = set()
        for pre in part:
            forbidden |= span_mod2([packed[assign[u]] for u in pre])
        ws = []
        for pre in full:
            if ring == INT:
                ws.append(cofactor(tuple(assign[u] for u in pre)))
            else:
                forbidden |= span_mod2([packed[assign[u]] for u in pre])
        ok = ~np.isin(packed_arr, np.fromiter(forbidden, dtype=np.int64)) if forbidden else np.ones(len(cands), bool)
        if ws:
            ok &= (np.abs(cand_arr @ np.array(ws, dtype=np.int64).T) == 1).all(axis=1)
        for i in np.flatnonzero(ok):
            yield int(i)

    def solve(first: int) -> list[tuple[int, ...]] | None:
        """Depth-first search with column 0 fixed to candidate ``first``."""
        if first not in options([], 0):
            return None
        assign = [first]
        stack = [options(assign, 1)] if m > 1 else []
        while len(assign) < m:
            if not stack:
                return None
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                assign.pop()
                continue
            assign.append(nxt)
            if len(assign) < m:
                stack.append(options(assign, len(assign)))
        return [cands[i] for i in assign]

    if m == 0:
        return None
    if workers <= 1:
        results = (solve(i) for i in range(len(cands)))
        found = next((r for r in results if r is not None), None)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(solve, i) for i in range(len(cands))]
            found = None
            for fut in futures:
                r = fut.result()
                if r is not None:
                    found = r
                    break
            for fut in futures:
                fut.cancel()
    if found is None:
        return None
    M = CharMatrix.from_columns(ring, found)
    assert verify_charmap(K, M), "search produced an invalid matrix"
    return M


def find_certificate(K: SimplicialComplex, workers: int = 1) -> CharMatrix | None:
    """Integer search at entry bound 1, escalating once to bound 2."""
    for bound in (1, 2):
        M = search_charmap(K, INT, bound, workers)
        if M is not None:
            return M
    return None


def _require_valid(K: SimplicialComplex, M: CharMatrix) -> None:
    if not verify_charmap(K, M):
        raise InvalidInputCertificate("input matrix is not a characteristic matrix of the complex")


def wedge_propagate(K: SimplicialComplex, M: CharMatrix, v: str, copy: str | None = None,
                    target: SimplicialComplex | None = None, check_input: bool = True) -> CharMatrix:
    """Characteristic matrix of wed_v(K) from one of K.

    A new first row has 1 in the columns of v and its copy; the copy's column
    is the first unit vector and every other column is its old column with a
    leading 0 (v's column gets a leading 1).
    """
    if check_input:
        _require_valid(K, M)
    W = target if target is not None else wedge(K, v, copy)
    iv = K.index(v)
    old = M.columns
    cols = []
    for i, c in enumerate(old):
        cols.append((1 if i == iv else 0,) + tuple(c))
        if i == iv:
            cols.append((1,) + (0,) * K.n)
    out = CharMatrix.from_columns(M.ring, cols)
    assert verify_charmap(W, out), "wedge propagation failed to verify"
    return out


def j_propagate(K: SimplicialComplex, M: CharMatrix, J: Sequence[int]) -> tuple[SimplicialComplex, CharMatrix]:
    """Apply wedge propagation in the same order as :func:`j_construction`."""
    J = check_multiplicity(K, J)
    _require_valid(K, M)
    cur, mat = K, M
    for v, j in zip(K.labels, J):
        for k in range(1, j):
            nxt = wedge(cur, copy_label(v, k - 1), copy_label(v, k))
            mat = wedge_propagate(cur, mat, copy_label(v, k - 1), target=nxt, check_input=False)
            cur = nxt
    return cur, mat


def stellar_propagate(K: SimplicialComplex, M: CharMatrix, sigma: Iterable[int | str],
                      new_label: str | None = None,
                      target: SimplicialComplex | None = None, check_input: bool = True) -> CharMatrix:
    """Append the column sum over σ for the subdivision vertex."""
    if check_input:
        _require_valid(K, M)
    face = K.require_face(sigma)
    S = target if target is not None else stellar_subdivision(K, face, new_label)
    old = dict(zip(K.labels, M.columns))
    new_col = tuple(sum(col) for col in zip(*(old[K.labels[i]] for i in face)))
    if M.ring == GF2:
        new_col = tuple(x % 2 for x in new_col)
    new_label = S.labels[-1]
    cols = [new_col if lab == new_label else old[lab] for lab in S.labels]
    out = CharMatrix.from_columns(M.ring, cols)
    assert verify_charmap(S, out), "stellar propagation failed to verify"
    return out


@dataclass(frozen=True)
class InequalityReport:
    m: int
    n: int
    picard: int
    seed: bool
    certified: bool
    bound: int
    status: str

    @property
    def tight(self) -> bool:
        return self.status == "tight"

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "picard": self.picard,
            "seed": self.seed,
            "certified": self.certified,
            "bound": self.bound,
            "status": self.status,
            "buchstaber": {"lower": self.picard if self.certified else 1, "upper": self.picard},
        }


def picard_and_inequality(K: SimplicialComplex, is_seed_flag: bool,
                          certificate: CharMatrix | None) -> InequalityReport:
    """Picard number and the seed inequality m <= 2^p - 1.

    ``status`` is one of tight / strict / violated, or explains why the
    inequality does not apply: out-of-range (p <= 2), not-seed, uncertified.
    """
    p = K.m - K.n
    bound = 2 ** p - 1
    certified = (
        certificate is not None
        and certificate.ring == INT
        and certificate.shape == (K.n, K.m)
        and bool(verify_charmap(K, certificate))
    )
    if p <= 2:
        status = "out-of-range"
    elif not is_seed_flag:
        status = "not-seed"
    elif not certified:
        status = "uncertified"
    elif K.m == bound:
        status = "tight"
    elif K.m < bound:
        status = "strict"
    else:
        status = "violated"
    return InequalityReport(K.m, K.n, p, bool(is_seed_flag), certified, bound, status)
