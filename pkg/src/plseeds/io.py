"""JSON file formats for complexes, certificates and reports."""
from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from .charmap import RINGS, CharMatrix, verify_charmap
from .complex import ComplexError, SimplicialComplex


class FormatError(ComplexError):
    pass


_INT_ARRAY = re.compile(r"\[[-\d,\s]*\]")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, one-space indent, integer arrays on one line."""
    text = json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)
    return _INT_ARRAY.sub(lambda mo: re.sub(r"\s+", "", mo.group(0)), text) + "\n"


def complex_to_dict(K: SimplicialComplex) -> dict:
    return {"name": K.name, "labels": list(K.labels), "facets": [list(f) for f in K.facets]}


def complex_hash(K: SimplicialComplex) -> str:
    body = json.dumps({"labels": list(K.labels), "facets": [list(f) for f in K.facets]},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def complex_from_dict(obj) -> SimplicialComplex:
    """Parse the normal form strictly; anything a writer would not emit is rejected."""
    if not isinstance(obj, dict) or set(obj) != {"name", "labels", "facets"}:
        raise FormatError("complex object needs exactly the keys name, labels, facets")
    name, labels, facets = obj["name"], obj["labels"], obj["facets"]
    if not isinstance(name, str):
        raise FormatError("name must be a string")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FormatError("labels must be an array of strings")
    if not isinstance(facets, list) or not facets:
        raise FormatError("facets must be a nonempty array")
    rows = []
    for f in facets:
        if not isinstance(f, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in f):
            raise FormatError(f"facet {f!r} is not an array of integers")
        rows.append(tuple(f))
    try:
        return SimplicialComplex(tuple(labels), tuple(rows), name)
    except ComplexError as exc:
        raise FormatError(str(exc)) from exc


def write_complex(K: SimplicialComplex, path: str | Path) -> str:
    text = dumps(complex_to_dict(K))
    Path(path).write_text(text)
    return text


def read_complex(path: str | Path) -> SimplicialComplex:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return complex_from_dict(obj)


def certificate_to_dict(K: SimplicialComplex, M: CharMatrix) -> dict:
    return {
        "complex": {"name": K.name, "hash": complex_hash(K)},
        "ring": M.ring,
        "matrix": [list(r) for r in M.rows],
    }


def certificate_from_dict(obj, K: SimplicialComplex) -> CharMatrix:
    """Parse a certificate for ``K``; it must match K's hash and re-verify."""
    if not isinstance(obj, dict) or set(obj) != {"complex", "ring", "matrix"}:
        raise FormatError("certificate needs exactly the keys complex, ring, matrix")
    if obj["ring"] not in RINGS:
        raise FormatError(f"unknown ring {obj['ring']!r}")
    ref = obj["complex"]
    if not isinstance(ref, dict) or ref.get("hash") != complex_hash(K):
        raise FormatError("certificate was issued for a different complex")
    matrix = obj["matrix"]
    if not isinstance(matrix, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in matrix
    ):
        raise FormatError("matrix must be an array of integer rows")
    try:
        M = CharMatrix(obj["ring"], tuple(tuple(r) for r in matrix))
        verdict = verify_charmap(K, M)
    except (ValueError, ComplexError) as exc:
        raise FormatError(str(exc)) from exc
    if not verdict:
        raise FormatError(f"certificate fails on facet {verdict.failing_facet}")
    return M


def write_certificate(K: SimplicialComplex, M: CharMatrix, path: str | Path) -> str:
    text = dumps(certificate_to_dict(K, M))
    Path(path).write_text(text)
    return text


def read_certificate(path: str | Path, K: SimplicialComplex) -> CharMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return certificate_from_dict(obj, K)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
