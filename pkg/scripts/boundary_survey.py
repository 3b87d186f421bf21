"""Compare "restriction to E splits V" with "V has no boundary in E" on random half-planes.

For stationary unit-multiplicity networks the two agree; the tent shows a
split whose region boundary is nonzero.

    python scripts/boundary_survey.py --regions 200 --seed 3
"""

import argparse
import math
from collections import Counter

import numpy as np

from segvarifold import fixtures
from segvarifold.decompose import check_split, split_identity
from segvarifold.errors import NonGenericRegionError
from segvarifold.geometry import Region
from segvarifold.variation import v_boundary
from segvarifold.varifold import SubMultiplicity, split_by_region

NETWORKS = {
    "six unit rays": lambda: fixtures.six_rays((1,) * 6),
    "y-junction": fixtures.y_junction,
    "two chords": fixtures.two_chords,
    "cross": fixtures.cross,
    "tent": fixtures.tent,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--regions", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    for name, build in NETWORKS.items():
        V = build()
        R0 = V.window.shape.radius
        table = Counter()
        done = 0
        while done < args.regions:
            a = rng.uniform(0, 2 * math.pi)
            E = Region.halfspace((math.cos(a), math.sin(a)), rng.uniform(-R0, R0))
            try:
                empty = v_boundary(V, E).is_empty()
                R, m = split_by_region(V, E)
            except NonGenericRegionError:
                continue
            done += 1
            table[(split_identity(R, m), empty)] += 1
        rows = ", ".join(f"split={s} empty={e}: {n}" for (s, e), n in sorted(table.items()))
        print(f"{name:14s} {rows}")

    T = fixtures.tent()
    legs = [1 if e in fixtures.tent_legs(T) else 0 for e in range(T.n_edges)]
    B = v_boundary(T, fixtures.tent_region(0.05))
    print(f"\ntent legs split the tent: {check_split(T, SubMultiplicity.of(legs))}; "
          f"boundary atoms in y > 0.05: {len(B)}")


if __name__ == "__main__":
    main()
