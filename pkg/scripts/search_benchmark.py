#!/usr/bin/env python3
"""Time the lexicographic certificate search on a few seeds and check thread determinism."""
import argparse
import time

from plseeds.charmap import GF2, INT, search_charmap, verify_charmap
from plseeds.family import crosspolytope_boundary, cyclic_boundary, polygon, remark_seed
from plseeds.io import certificate_to_dict, dumps


def cases():
    yield "pentagon", polygon(5)
    yield "octahedron", crosspolytope_boundary(3)
    yield "C4(7)", cyclic_boundary(4, 7)
    yield "remark seed", remark_seed().complex


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4])
    args = ap.parse_args()
    for name, K in cases():
        for ring in (GF2, INT):
            texts, times = set(), []
            for w in args.workers:
                t0 = time.perf_counter()
                M = search_charmap(K, ring, 1, workers=w)
                times.append(time.perf_counter() - t0)
                texts.add(dumps(certificate_to_dict(K, M)) if M is not None else "none")
            ok = M is not None and bool(verify_charmap(K, M))
            print(f"{name:12} {ring:4} found={M is not None!s:5} verifies={ok!s:5} "
                  f"identical={len(texts) == 1!s:5} " + " ".join(f"w{w}:{t:.2f}s" for w, t in zip(args.workers, times)))


if __name__ == "__main__":
    main()
