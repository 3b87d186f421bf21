"""Walk through the six-ray star: stationarity, candidate decompositions, enumeration.

    python scripts/six_ray_example.py [--svg six_rays.svg]
"""

import argparse
from pathlib import Path

from segvarifold import fixtures
from segvarifold.decompose import SplitMultiset, decompose, enumerate_decompositions, verify_decomposition
from segvarifold.render import render_svg
from segvarifold.variation import first_variation
from segvarifold.varifold import SubMultiplicity

LINES = [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)]
TRIDENTS = [(1, 0, 2, 0, 2, 0), (0, 2, 0, 1, 0, 2)]

CANDIDATES = {
    "three lines, count 2": [(m, 2) for m in LINES],
    "all six rays, count 2": [((1,) * 6, 2)],
    "two tridents, count 1": [(t, 1) for t in TRIDENTS],
    "two tridents + line R1+R4": [(t, 1) for t in TRIDENTS] + [(LINES[0], 1)],
}


def fmt(parts):
    return ", ".join(f"{c} x {[int(x) for x in m.values]}" for m, c in parts)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--svg", type=Path, default=None)
    args = ap.parse_args()

    V = fixtures.six_rays()
    print(f"multiplicities: {[int(m) for m in V.mult]}")
    print(f"first variation atoms: {len(first_variation(V))}")

    print("\ncandidate decompositions")
    for name, parts in CANDIDATES.items():
        ms = SplitMultiset(V, tuple((SubMultiplicity.of(m), c) for m, c in parts))
        rep = verify_decomposition(V, ms)
        print(f"  {name:28s} {'ok' if rep.ok else 'FAILS: ' + rep.first_failure}")

    print("\nall decompositions")
    for D in enumerate_decompositions(V):
        print(f"  {fmt(D.parts)}")
    print(f"\ngreedy decompose: {fmt(decompose(V).parts)}")

    if args.svg:
        args.svg.write_text(render_svg(V, title="six rays"))
        print(f"wrote {args.svg}")


if __name__ == "__main__":
    main()
