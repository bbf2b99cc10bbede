"""Stellar subdivision, wedge, suspension and the J-construction."""
from __future__ import annotations

from typing import Iterable, Sequence

from .complex import (
    ComplexError,
    LabelCollision,
    SimplicialComplex,
    boundary_of_simplex,
    check_label,
    from_masks,
    from_minimal_non_faces,
    join,
    mask_of,
    minimal_non_face_masks,
)


class LengthMismatch(ComplexError):
    pass


class BoundsViolation(ComplexError):
    pass


def copy_label(v: str, k: int) -> str:
    """Label of the k-th wedge copy of ``v``; copy 0 keeps the original label."""
    return v if k == 0 else f"{v}#{k}"


def subdivision_label(K: SimplicialComplex, face: Iterable[int]) -> str:
    return "w{" + "+".join(K.face_labels(face)) + "}"


def _fresh(K: SimplicialComplex, label: str) -> str:
    check_label(label)
    if label in K.labels:
        raise LabelCollision(f"label {label!r} already used")
    return label


def stellar_subdivision(K: SimplicialComplex, sigma: Iterable[int | str],
                        new_label: str | None = None) -> SimplicialComplex:
    """Remove the star of ``sigma`` and cone a new vertex over ∂σ * lk(σ).

    Facets not containing σ survive; each facet F ⊇ σ is replaced by the
    sets {new} ∪ F minus one vertex of σ. The new vertex goes last in the
    label table. For a single vertex this is a relabeling.
    """
    face = K.require_face(sigma)
    if not face:
        raise ComplexError("cannot subdivide the empty face")
    label = _fresh(K, new_label if new_label is not None else subdivision_label(K, face))
    s = mask_of(face)
    new_bit = 1 << K.m
    masks = []
    for f in K.masks:
        if f & s != s:
            masks.append(f)
            continue
        for x in face:
            masks.append((f & ~(1 << x)) | new_bit)
    return from_masks(K.labels + (label,), masks)


def default_copy_label(K: SimplicialComplex, v: str) -> str:
    k = 1
    while copy_label(v, k) in K.labels:
        k += 1
    return copy_label(v, k)


def wedge(K: SimplicialComplex, v: str, copy: str | None = None) -> SimplicialComplex:
    """Wedge of K at vertex ``v``: I * lk(v) ∪ ∂I * {σ : v ∉ σ}, I = {v, copy}.

    The copy is inserted right after ``v`` in the label table.
    """
    iv = K.index(v)
    copy = _fresh(K, copy if copy is not None else default_copy_label(K, v))
    pool = K.labels[: iv + 1] + (copy,) + K.labels[iv + 1:]

    def lift(mask: int) -> int:
        low = mask & ((1 << (iv + 1)) - 1)
        return low | ((mask >> (iv + 1)) << (iv + 2))

    vb, cb = 1 << iv, 1 << (iv + 1)
    masks = []
    for f in K.masks:
        g = lift(f)
        if g & vb:
            masks.append(g | cb)
        else:
            masks.append(g | vb)
            masks.append(g | cb)
    return from_masks(pool, masks)


def wedge_via_nonface_duplication(K: SimplicialComplex, v: str, copy: str | None = None) -> SimplicialComplex:
    """Wedge built from minimal non-faces: every minimal non-face through ``v`` also gets the copy."""
    iv = K.index(v)
    copy = _fresh(K, copy if copy is not None else default_copy_label(K, v))
    pool = K.labels[: iv + 1] + (copy,) + K.labels[iv + 1:]
    vb, cb = 1 << iv, 1 << (iv + 1)
    out = []
    for nf in minimal_non_face_masks(K):
        low = nf & ((1 << (iv + 1)) - 1)
        g = low | ((nf >> (iv + 1)) << (iv + 2))
        out.append(g | cb if g & vb else g)
    return from_minimal_non_faces(pool, out)


def suspension(K: SimplicialComplex, north: str | None = None, south: str | None = None) -> SimplicialComplex:
    """∂I * K with the two apexes appended to the label table."""
    north = _fresh(K, north if north is not None else K.fresh_label("N"))
    south = _fresh(K, south if south is not None else K.fresh_label("S"))
    if north == south:
        raise LabelCollision("suspension apexes need distinct labels")
    return join(K, boundary_of_simplex([north, south]))


def check_multiplicity(K: SimplicialComplex, J: Sequence[int]) -> tuple[int, ...]:
    J = tuple(int(j) for j in J)
    if len(J) != K.m:
        raise LengthMismatch(f"J has {len(J)} entries, complex has {K.m} vertices")
    if any(j < 1 for j in J):
        raise BoundsViolation(f"J entries must be positive: {J}")
    return J


def j_construction(K: SimplicialComplex, J: Sequence[int]) -> SimplicialComplex:
    """K(J): vertex v gets copies v, v#1, ..., v#(j_v - 1).

    Wedges are applied in label-table order, each new copy wedged off the
    previous one, so copies of v sit contiguously after v.
    """
    J = check_multiplicity(K, J)
    out = K
    for v, j in zip(K.labels, J):
        for k in range(1, j):
            out = wedge(out, copy_label(v, k - 1), copy_label(v, k))
    return out.named(K.name and f"{K.name}{J}") if any(j > 1 for j in J) else out


def assembled_face(K: SimplicialComplex, J: Sequence[int], s: Sequence[int],
                   KJ: SimplicialComplex | None = None) -> tuple[str, ...]:
    """Labels of the assembled face {v^(s_v) : j_v > 1}, checked to be a face of K(J)."""
    J = check_multiplicity(K, J)
    if len(s) != K.m:
        raise LengthMismatch(f"selection has {len(s)} entries, complex has {K.m} vertices")
    for v, j, sv in zip(K.labels, J, s):
        if not 0 <= sv <= j - 1:
            raise BoundsViolation(f"s_{v} = {sv} outside 0..{j - 1}")
    face = tuple(copy_label(v, sv) for v, j, sv in zip(K.labels, J, s) if j > 1)
    target = KJ if KJ is not None else j_construction(K, J)
    if not target.is_face(face):
        raise AssertionError(f"assembled face {face} is not a face of K(J)")
    return face
