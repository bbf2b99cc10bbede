"""Base spheres and the seed constructions: subdivided wedges, the J=(2,2,2,1,1) example,
and the level-by-level family realizing m = 2^p - 1.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .charmap import CharMatrix, find_certificate, j_propagate, stellar_propagate, verify_charmap
from .classify import is_seed, is_suspended
from .complex import ComplexError, SimplicialComplex, are_isomorphic, from_masks
from .evidence import EvidenceReport, sphere_evidence_report
from .operations import assembled_face, copy_label, stellar_subdivision, suspension

log = logging.getLogger(__name__)

MAX_SUPPORTED_P = 5


class TooSmall(ComplexError):
    pass


class InvalidParameters(ComplexError):
    pass


class HypothesisViolated(ComplexError):
    pass


class NotASeed(ComplexError):
    pass


class UnsupportedP(ComplexError):
    pass


class TheoremContradiction(RuntimeError):
    """Brute-force flags disagree with what the construction guarantees."""


def polygon(k: int) -> SimplicialComplex:
    if k < 3:
        raise TooSmall(f"a polygon needs at least 3 vertices, got {k}")
    labels = [str(i + 1) for i in range(k)]
    return from_masks(labels, [(1 << i) | (1 << ((i + 1) % k)) for i in range(k)], f"P{k}")


def crosspolytope_boundary(n: int) -> SimplicialComplex:
    """Join of n copies of ∂I; antipodal vertices are i and i+n."""
    if n < 1:
        raise InvalidParameters("crosspolytope dimension must be >= 1")
    labels = [str(i + 1) for i in range(2 * n)]
    masks = []
    for choice in itertools.product((0, 1), repeat=n):
        masks.append(sum(1 << (i + n * c) for i, c in enumerate(choice)))
    return from_masks(labels, masks, f"cross{n}")


def gale_evenness(S: Sequence[int], m: int) -> bool:
    """Gale's condition: between any two non-members, the members form an even block."""
    members = set(S)
    outside = [i for i in range(1, m + 1) if i not in members]
    for i, j in itertools.combinations(outside, 2):
        if sum(1 for x in members if i < x < j) % 2:
            return False
    return True


def cyclic_boundary(d: int, m: int) -> SimplicialComplex:
    """Boundary complex of the cyclic d-polytope with m vertices."""
    if d < 2 or m < d + 1:
        raise InvalidParameters(f"need d >= 2 and m >= d + 1, got d={d}, m={m}")
    labels = [str(i + 1) for i in range(m)]
    masks = [
        sum(1 << (x - 1) for x in S)
        for S in itertools.combinations(range(1, m + 1), d)
        if gale_evenness(S, m)
    ]
    return from_masks(labels, masks, f"C{d}({m})")


@dataclass
class FamilyMember:
    complex: SimplicialComplex
    certificate: CharMatrix
    trace: list[str]
    seed: bool
    non_suspended: bool
    polytopal: str = "by construction"
    evidence: EvidenceReport | None = None
    extra: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.complex.m

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def p(self) -> int:
        return self.complex.m - self.complex.n

    @property
    def name(self) -> str:
        return self.complex.name

    def summary(self) -> dict:
        out = {
            "name": self.name,
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "non_suspended": self.non_suspended,
            "polytopal": self.polytopal,
            "trace": list(self.trace),
        }
        if self.evidence is not None:
            out["evidence"] = self.evidence.as_dict()
        return out


def _member(K: SimplicialComplex, cert: CharMatrix, trace: list[str]) -> FamilyMember:
    """Recompute flags by brute force and re-verify the certificate."""
    if not verify_charmap(K, cert):
        raise TheoremContradiction(f"certificate of {K.name} does not verify")
    if not verify_charmap(K, cert.mod2()):
        raise TheoremContradiction(f"mod-2 reduction of the certificate of {K.name} does not verify")
    return FamilyMember(K, cert, trace, bool(is_seed(K)), not is_suspended(K))


_BASE_CERTS: dict[tuple[str, tuple], CharMatrix] = {}


def certified(K: SimplicialComplex, trace: list[str] | None = None) -> FamilyMember:
    key = (K.labels, K.facets)
    if key not in _BASE_CERTS:
        cert = find_certificate(K)
        if cert is None:
            raise TheoremContradiction(f"no integer certificate found for {K.name}")
        _BASE_CERTS[key] = cert
    return _member(K, _BASE_CERTS[key], trace or [f"base {K.name}"])


def theorem_seed(K: SimplicialComplex, cert: CharMatrix, doubled: Sequence[str],
                 name: str | None = None, trace: Sequence[str] = ()) -> FamilyMember:
    """Double the vertices in ``doubled`` and stellarly subdivide.

    One doubled vertex v: subdivide the wedged edge {v, v#1}; the result
    must be isomorphic to the suspension of K and be a suspended seed.
    Several doubled vertices (K non-suspended): subdivide the assembled face
    they form; the result must be a non-suspended seed. Flags come from a
    covering-pair scan and any disagreement raises TheoremContradiction.
    """
    doubled = list(dict.fromkeys(doubled))
    if not doubled:
        raise InvalidParameters("at least one vertex must be doubled")
    for v in doubled:
        K.index(v)
    if not is_seed(K):
        raise NotASeed(f"{K.name} has a wedged edge")
    if len(doubled) > 1 and is_suspended(K):
        raise HypothesisViolated(f"{K.name} is suspended; doubling several vertices needs a non-suspended seed")
    if not verify_charmap(K, cert):
        raise InvalidParameters("certificate does not verify on the base complex")
    J = tuple(2 if lab in doubled else 1 for lab in K.labels)
    KJ, cert_j = j_propagate(K, cert, J)
    if len(doubled) == 1:
        v = doubled[0]
        sigma = (v, copy_label(v, 1))
    else:
        sigma = assembled_face(K, J, [0] * K.m, KJ)
    out = stellar_subdivision(KJ, sigma)
    cert_out = stellar_propagate(KJ, cert_j, sigma, target=out, check_input=False)
    label = name or f"ss({K.name or 'K'};{'+'.join(doubled)})"
    out = out.named(label)
    steps = list(trace) + [f"J={list(J)}", "ss:" + ",".join(sigma)]
    member = _member(out, cert_out, steps)
    if not member.seed:
        raise TheoremContradiction(f"{label} has a wedged edge")
    if len(doubled) == 1:
        if member.non_suspended:
            raise TheoremContradiction(f"{label} should be suspended")
        if are_isomorphic(out, suspension(K)) is None:
            raise TheoremContradiction(f"{label} is not isomorphic to the suspension of {K.name}")
    elif not member.non_suspended:
        raise TheoremContradiction(f"{label} has a suspended pair")
    return member


def pentagon_member() -> FamilyMember:
    return certified(polygon(5))


def remark_seed() -> FamilyMember:
    """Non-suspended seed of Picard number 4 from the pentagon with J = (2,2,2,1,1)."""
    base = pentagon_member()
    return theorem_seed(base.complex, base.certificate, ["1", "2", "3"], name="remark",
                        trace=["base P5"])


def _canonical(member: FamilyMember, name: str) -> FamilyMember:
    """Rename vertices to 1..m so the next level can address them positionally."""
    K = member.complex.integer_labels(name)
    trace = list(member.trace) + [f"relabel 1..{K.m}"]
    return FamilyMember(K, member.certificate, trace, member.seed, member.non_suspended,
                        member.polytopal, member.evidence, member.extra)


def base_level() -> list[FamilyMember]:
    """Picard number 3: pentagon, octahedron, C^4(7)."""
    return [certified(polygon(5)), certified(crosspolytope_boundary(3)), certified(cyclic_boundary(4, 7))]


def next_level(prev: list[FamilyMember], p: int) -> list[FamilyMember]:
    """Members of Picard number ``p`` for n = 2 .. 2^p - p - 1 from the level p - 1 list."""
    by_n = {mem.n: mem for mem in prev}
    top = max(prev, key=lambda mem: mem.m)
    out = [_canonical(certified(polygon(p + 2), [f"base P{p + 2}"]), f"p{p}n2")]
    for n in range(3, 2 ** (p - 1) - p + 2):
        base = by_n[n - 1]
        v = base.complex.labels[0]
        mem = theorem_seed(base.complex, base.certificate, [v], trace=base.trace + [f"wedge:{v}"])
        out.append(_canonical(mem, f"p{p}n{n}"))
    for k in range(2, 2 ** (p - 1)):
        first = list(top.complex.labels[:k])
        mem = theorem_seed(top.complex, top.certificate, first, trace=list(top.trace))
        out.append(_canonical(mem, f"p{p}n{mem.n}"))
    return out


def corollary_family(p: int, with_evidence: bool = False, face_budget: int | None = None) -> list[FamilyMember]:
    """Seeds of Picard number p with m = p + 2, ..., 2^p - 1 (one per dimension).

    Levels are built inductively from the p = 3 base spheres. Every member
    is re-checked: seed, certificate, m = n + p, m <= 2^p - 1, and the
    member with m = 2^p - 1 non-suspended.
    """
    if not 3 <= p <= MAX_SUPPORTED_P:
        raise UnsupportedP(f"supported Picard numbers are 3..{MAX_SUPPORTED_P}, got {p}")
    level = [_canonical(mem, f"p3n{mem.n}") for mem in base_level()]
    for q in range(4, p + 1):
        log.info("building level p=%d", q)
        level = next_level(level, q)
    level.sort(key=lambda mem: mem.n)
    top = 2 ** p - 1
    for mem in level:
        if not mem.seed:
            raise TheoremContradiction(f"{mem.name} is not a seed")
        if mem.p != p or mem.m > top:
            raise TheoremContradiction(f"{mem.name} has m={mem.m}, n={mem.n}")
        if mem.m == top and not mem.non_suspended:
            raise TheoremContradiction(f"{mem.name} attains the bound but is suspended")
        if with_evidence:
            mem.evidence = sphere_evidence_report(mem.complex, face_budget)
            if not mem.evidence.passed:
                raise TheoremContradiction(f"{mem.name} fails sphere evidence: {mem.evidence.reasons}")
    if [mem.n for mem in level] != list(range(2, 2 ** p - p)):
        raise TheoremContradiction(f"dimension range incomplete: {[mem.n for mem in level]}")
    return level


def two_pentagons() -> SimplicialComplex:
    """Disjoint union of two pentagons (not a sphere)."""
    a = polygon(5)
    labels = [f"a{x}" for x in a.labels] + [f"b{x}" for x in a.labels]
    return from_masks(labels, list(a.masks) + [f << 5 for f in a.masks], "2P5")


def octahedron() -> SimplicialComplex:
    return crosspolytope_boundary(3).named("octahedron")
