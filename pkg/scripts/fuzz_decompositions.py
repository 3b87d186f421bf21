"""Fuzz decompose against the enumeration on random balanced stars.

Reports how often decompositions are unique, the spread of part counts, and
any instance where the greedy result fails verification or is missing from
the enumeration.

    python scripts/fuzz_decompositions.py --n 500 --seed 1 --max-mult 3 --max-edges 6
"""

import argparse
import time
from collections import Counter

import numpy as np

from segvarifold import fixtures
from segvarifold.decompose import decompose, enumerate_decompositions, verify_decomposition


def key(D):
    return tuple((m.values, c) for m, c in D.parts)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-mult", type=int, default=3)
    ap.add_argument("--max-edges", type=int, default=6)
    ap.add_argument("--randomize", action="store_true", help="random split selection in decompose")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n_decomp = Counter()
    bad = []
    t0 = time.perf_counter()
    for i in range(args.n):
        V = fixtures.random_star(rng, args.max_mult, args.max_edges)
        D = decompose(V, rng=rng if args.randomize else None)
        if not verify_decomposition(V, D).ok:
            bad.append((i, "verification"))
        all_D = enumerate_decompositions(V)
        n_decomp[len(all_D)] += 1
        if key(D) not in {key(E) for E in all_D}:
            bad.append((i, "not enumerated"))
    dt = time.perf_counter() - t0

    print(f"{args.n} stars in {dt:.1f}s")
    print("decompositions per star:")
    for k in sorted(n_decomp):
        print(f"  {k:3d}: {n_decomp[k]}")
    print(f"non-unique: {sum(v for k, v in n_decomp.items() if k > 1)} / {args.n}")
    print(f"problems: {bad or 'none'}")


if __name__ == "__main__":
    main()
