"""Command-line front end.

Every command prints one canonical JSON object on stdout and a short human
summary on stderr. Exit status is 0 iff every requested check passed; on
malformed input or a failed check the JSON carries an ``error`` object.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .charmap import (
    GF2,
    INT,
    CharMatrix,
    find_certificate,
    j_propagate,
    picard_and_inequality,
    search_charmap,
    stellar_propagate,
    verify_charmap,
    wedge_propagate,
)
from .classify import classify_pair, covering_label_pairs, is_seed, is_suspended, seed_decomposition
from .complex import ComplexError, SimplicialComplex, are_isomorphic, default_face_budget, link
from .evidence import sphere_evidence_report
from .family import (
    FamilyMember,
    corollary_family,
    crosspolytope_boundary,
    cyclic_boundary,
    polygon,
    remark_seed,
)
from .operations import j_construction, stellar_subdivision, suspension, wedge


class CheckFailed(Exception):
    pass


def base_complex(spec: str) -> SimplicialComplex:
    """pentagon | octahedron | c47 | polygon:K | cross:N | cyclic:D,M"""
    name, _, arg = spec.partition(":")
    if name == "pentagon":
        return polygon(5)
    if name == "octahedron":
        return crosspolytope_boundary(3).named("octahedron")
    if name == "c47":
        return cyclic_boundary(4, 7)
    if name == "polygon":
        return polygon(int(arg))
    if name == "cross":
        return crosspolytope_boundary(int(arg))
    if name == "cyclic":
        d, m = (int(x) for x in arg.split(","))
        return cyclic_boundary(d, m)
    raise ComplexError(f"unknown base complex {spec!r}")


def suspension_propagate(K: SimplicialComplex, M: CharMatrix, S: SimplicialComplex) -> CharMatrix:
    cols = dict(zip(K.labels, M.columns))
    north, south = S.labels[-2], S.labels[-1]
    out = []
    for lab in S.labels:
        if lab == north:
            out.append((0,) * K.n + (1,))
        elif lab == south:
            out.append((0,) * K.n + (1 if M.ring == GF2 else -1,))
        else:
            out.append(tuple(cols[lab]) + (0,))
    result = CharMatrix.from_columns(M.ring, out)
    assert verify_charmap(S, result)
    return result


def apply_op(K: SimplicialComplex, op: str, cert: CharMatrix | None):
    """Apply one pipeline step; returns the new complex and propagated certificate (or None)."""
    kind, _, arg = op.partition(":")
    args = [a for a in arg.split(",") if a] if arg else []
    if kind == "wedge":
        if not 1 <= len(args) <= 2:
            raise ComplexError("wedge takes a vertex and an optional copy label")
        out = wedge(K, *args)
        return out, cert and wedge_propagate(K, cert, args[0], out.labels[out.index(args[0]) + 1], target=out)
    if kind == "ss":
        label = None
        if args and "=" in args[-1]:
            args[-1], label = args[-1].split("=", 1)
        out = stellar_subdivision(K, args, label)
        return out, cert and stellar_propagate(K, cert, args, target=out)
    if kind == "susp":
        out = suspension(K, *args)
        return out, cert and suspension_propagate(K, cert, out)
    if kind == "j":
        J = [int(x) for x in args]
        if cert is None:
            return j_construction(K, J), None
        return j_propagate(K, cert, J)
    if kind == "link":
        return link(K, args), None
    if kind == "relabel":
        return K.integer_labels(), cert
    raise ComplexError(f"unknown operation {op!r}")


def _load(path: str) -> SimplicialComplex:
    return io.read_complex(path)


def cmd_build(a) -> dict:
    K = _load(a.input) if a.input else base_complex(a.base)
    base_name = K.name
    cert = None
    if a.certify:
        cert = find_certificate(K)
        if cert is None:
            raise CheckFailed(f"no integer certificate found for {K.name}")
    for op in a.op:
        K, cert = apply_op(K, op, cert)
    K = K.named(a.name or " ".join([base_name or "complex"] + list(a.op)))
    payload = {
        "complex": io.complex_to_dict(K),
        "m": K.m,
        "n": K.n,
        "p": K.picard,
        "trace": [f"base {a.input or a.base}"] + list(a.op),
    }
    if a.output:
        io.write_complex(K, a.output)
    if cert is not None:
        payload["certificate"] = io.certificate_to_dict(K, cert)
        if a.cert_output:
            io.write_certificate(K, cert, a.cert_output)
    _say(f"built {K.name}: m={K.m} n={K.n} facets={len(K.facets)}")
    return payload


def cmd_verify(a) -> dict:
    K = _load(a.file)
    seed = is_seed(K)
    susp = is_suspended(K)
    pairs = []
    for v, w in covering_label_pairs(K):
        try:
            kind = classify_pair(K, (v, w)).kind
        except Exception as exc:  # witness failure on a non-sphere input
            kind = f"unverified: {exc}"
        pairs.append({"pair": [v, w], "kind": kind})
    payload = {
        "name": K.name,
        "m": K.m,
        "n": K.n,
        "p": K.picard,
        "facets": len(K.facets),
        "seed": seed.value,
        "seed_reason": seed.reason,
        "suspended": susp.value,
        "suspended_reason": susp.reason,
        "covering_pairs": pairs,
    }
    failed = []
    if not a.no_evidence:
        report = sphere_evidence_report(K, a.face_budget)
        payload["evidence"] = report.as_dict()
        if not report.passed:
            failed.append("sphere evidence")
    cert = None
    if a.charmap:
        cert = io.read_certificate(a.charmap, K)
        payload["certificate"] = {"ok": True, "ring": cert.ring}
    if a.charmap or a.seed_inequality:
        ineq = picard_and_inequality(K, seed.value, cert)
        payload["inequality"] = ineq.as_dict()
        if ineq.status == "violated":
            failed.append("seed inequality")
    _say(f"{K.name}: seed={seed.value} suspended={susp.value} m={K.m} n={K.n}"
         + (f" inequality={payload['inequality']['status']}" if "inequality" in payload else ""))
    if failed:
        payload["failed"] = failed
        raise CheckFailed(", ".join(failed), payload)
    return payload


def cmd_charmap(a) -> dict:
    K = _load(a.file)
    ring = GF2 if a.ring == "gf2" else INT
    if a.check:
        M = io.read_certificate(a.check, K)
        _say(f"certificate verifies on {K.name}")
        return {"name": K.name, "ok": True, "ring": M.ring}
    M = search_charmap(K, ring, a.bound, a.workers)
    if M is None and ring == INT and a.escalate:
        M = search_charmap(K, ring, a.bound + 1, a.workers)
    if M is None:
        raise CheckFailed(f"no {ring} characteristic matrix within the search bounds",
                          {"name": K.name, "found": False, "status": "unknown"})
    if a.output:
        io.write_certificate(K, M, a.output)
    _say(f"found {ring} certificate for {K.name}")
    return {"name": K.name, "found": True, "certificate": io.certificate_to_dict(K, M)}


def cmd_decompose(a) -> dict:
    K = _load(a.file)
    dec = seed_decomposition(K)
    bij = are_isomorphic(dec.rebuild(), K)
    payload = {
        "name": K.name,
        "seed": io.complex_to_dict(dec.seed),
        "J": list(dec.J),
        "label_map": {k: list(v) for k, v in sorted(dec.label_map.items())},
        "roundtrip": bij,
    }
    _say(f"{K.name} = {dec.seed.m}-vertex seed with J={list(dec.J)}")
    if bij is None:
        raise CheckFailed("round trip K'(J) is not isomorphic to the input", payload)
    return payload


def cmd_iso(a) -> dict:
    K, L = _load(a.a), _load(a.b)
    bij = are_isomorphic(K, L)
    payload = {"isomorphic": bij is not None, "bijection": bij}
    _say(f"isomorphic: {bij is not None}")
    if bij is None:
        raise CheckFailed("complexes are not isomorphic", payload)
    return payload


def _write_member(mem: FamilyMember, out: Path) -> dict:
    name = mem.name
    texts = {
        "complex": io.dumps(io.complex_to_dict(mem.complex)),
        "certificate": io.dumps(io.certificate_to_dict(mem.complex, mem.certificate)),
        "report": io.dumps(mem.summary()),
    }
    files = {"complex": f"{name}.json", "certificate": f"{name}.cert.json", "report": f"{name}.report.json"}
    for key, fname in files.items():
        (out / fname).write_text(texts[key])
    entry = {k: v for k, v in mem.summary().items() if k in ("name", "m", "n", "p", "seed", "non_suspended")}
    entry["files"] = {key: {"path": fname, "sha256": io.sha256_text(texts[key])} for key, fname in files.items()}
    if mem.evidence is not None:
        entry["evidence_passed"] = mem.evidence.passed
    return entry


def _emit_members(members: list[FamilyMember], out_dir: str | None, extra: dict) -> dict:
    manifest = dict(extra)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        manifest["members"] = [_write_member(mem, out) for mem in members]
        (out / "manifest.json").write_text(io.dumps(manifest))
    else:
        manifest["members"] = [mem.summary() for mem in members]
    return manifest


def cmd_family(a) -> dict:
    members = corollary_family(a.p, with_evidence=a.evidence, face_budget=a.face_budget)
    top = 2 ** a.p - 1
    manifest = _emit_members(members, a.out, {"p": a.p, "count": len(members), "bound": top})
    _say(f"p={a.p}: {len(members)} members, m={members[0].m}..{members[-1].m}, bound {top}")
    return manifest


def cmd_remark(a) -> dict:
    mem = remark_seed()
    _say(f"remark seed: m={mem.m} n={mem.n} p={mem.p} seed={mem.seed} non_suspended={mem.non_suspended}")
    return _emit_members([mem], a.out, {"J": [2, 2, 2, 1, 1]})


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plseeds", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a complex from a base and an operation pipeline")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--base", help="pentagon | octahedron | c47 | polygon:K | cross:N | cyclic:D,M")
    src.add_argument("--input", help="complex file to start from")
    b.add_argument("--op", action="append", default=[],
                   help="wedge:V[,COPY] | ss:A,B[=LABEL] | susp[:N,S] | j:J1,J2,... | link:A,B | relabel")
    b.add_argument("--name")
    b.add_argument("--certify", action="store_true", help="search a base certificate and propagate it")
    b.add_argument("-o", "--output")
    b.add_argument("--cert-output")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="seed/suspension flags, sphere evidence, certificate check")
    v.add_argument("file")
    v.add_argument("--charmap", help="certificate file to verify")
    v.add_argument("--seed-inequality", action="store_true")
    v.add_argument("--no-evidence", action="store_true")
    v.add_argument("--face-budget", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("charmap", help="search or verify a characteristic matrix")
    c.add_argument("file")
    c.add_argument("--ring", choices=["gf2", "int"], default="int")
    c.add_argument("--bound", type=int, default=1)
    c.add_argument("--no-escalate", dest="escalate", action="store_false")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--check", help="verify this certificate instead of searching")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_charmap)

    d = sub.add_parser("decompose", help="seed decomposition with round-trip check")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    i = sub.add_parser("iso", help="isomorphism test")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    f = sub.add_parser("family", help="seeds of Picard number p with m up to 2^p - 1")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--evidence", action="store_true")
    f.add_argument("--face-budget", type=int, default=None)
    f.add_argument("--out")
    f.set_defaults(func=cmd_family)

    r = sub.add_parser("remark", help="the J=(2,2,2,1,1) non-suspended seed from the pentagon")
    r.add_argument("--out")
    r.set_defaults(func=cmd_remark)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "face_budget", None) is None and hasattr(args, "face_budget"):
        args.face_budget = default_face_budget()
    try:
        payload = args.func(args)
    except CheckFailed as exc:
        msg = exc.args[0]
        body = dict(exc.args[1]) if len(exc.args) > 1 else {}
        body["error"] = {"type": "CheckFailed", "message": msg}
        sys.stdout.write(io.dumps(body))
        _say(f"FAILED: {msg}")
        return 1
    except (ComplexError, OSError, ValueError) as exc:
        sys.stdout.write(io.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        _say(f"error: {exc}")
        return 2
    sys.stdout.write(io.dumps(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
