"""Acceptance criteria 1-10; each test prints one [PASS]/[FAIL] line."""

import math
import os
import subprocess
import sys

import numpy as np

import oracles
from segvarifold import fixtures
from segvarifold.decompose import (
    SplitMultiset,
    check_split,
    decompose,
    enumerate_decompositions,
    split_identity,
    verify_decomposition,
)
from segvarifold.errors import NonGenericRegionError
from segvarifold.geometry import Ball, Box, HalfSpace, Region
from segvarifold.variation import (
    apriori_check,
    first_variation,
    restrict_measure,
    total_variation_measure,
    v_boundary,
)
from segvarifold.varifold import (
    EPS_NUM,
    PolyhedralVarifold,
    SubMultiplicity,
    add,
    density,
    restrict,
    scalar_multiple,
    split_by_region,
    strong_distance,
)

S = SubMultiplicity.of
FUZZ_SEED = 20240611
N_FUZZ = 200


def run_criterion(record, number, body):
    try:
        ok, detail = body()
    except Exception as exc:
        record(number, False, f"raised {type(exc).__name__}: {exc}")
        raise
    record(number, ok, detail)
    assert ok, detail


def fuzzed_stars():
    rng = np.random.default_rng(FUZZ_SEED)
    return [fixtures.random_star(rng, max_mult=3, max_edges=6) for _ in range(N_FUZZ)]


def all_fixtures():
    return {
        "six-rays": fixtures.six_rays(),
        "y-junction": fixtures.y_junction(),
        "crossing-segment": fixtures.crossing_segment(),
        "unit-segment": fixtures.unit_segment(),
        "two-segments": fixtures.two_disjoint_segments(),
        "tent": fixtures.tent(),
        "two-chords": fixtures.two_chords(),
        "cross": fixtures.cross(),
    }


def generic_region(rng, V, make):
    """Draw regions from ``make`` until one is generic for V and its atoms."""
    for _ in range(1000):
        E = make(rng)
        try:
            v_boundary(V, E)
            restrict_measure(first_variation(V), E)
            return E
        except NonGenericRegionError:
            continue
    raise AssertionError("no generic region found")


def halfplane_in(radius):
    def make(rng):
        a = rng.uniform(0, 2 * math.pi)
        return Region.halfspace((math.cos(a), math.sin(a)), rng.uniform(-radius, radius))
    return make


def wedge_in(radius):
    def make(rng):
        hs = []
        for _ in range(2):
            a = rng.uniform(0, 2 * math.pi)
            hs.append(HalfSpace((math.cos(a), math.sin(a)), rng.uniform(-radius, radius)))
        return Region(tuple(hs), mode=str(rng.choice(["all", "any"])))
    return make


# --------------------------------------------------------------------------


def test_criterion_1_six_ray_example(record):
    def body():
        V = fixtures.six_rays()
        lines = [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)]
        tridents = [(1, 0, 2, 0, 2, 0), (0, 2, 0, 1, 0, 2)]

        def rep(parts):
            return verify_decomposition(V, SplitMultiset(V, tuple((S(m), c) for m, c in parts)))

        stationary = first_variation(V).is_empty()
        h1 = rep([(m, 2) for m in lines])
        h3_fixed = rep([(t, 1) for t in tridents] + [(lines[0], 1)])
        h2 = rep([((1,) * 6, 2)])
        h3_printed = rep([(t, 1) for t in tridents])
        h2_reason = "member decomposable" in (h2.first_failure or "")
        h3_reason = (h3_printed.first_failure or "").startswith("edgewise sum mismatch")
        ok = stationary and h1.ok and h3_fixed.ok and not h2.ok and h2_reason \
            and not h3_printed.ok and h3_reason
        detail = (f"stationary={stationary}; H1 ok={h1.ok}; corrected H3 ok={h3_fixed.ok}; "
                  f"H2 fails: {h2.first_failure!r}; printed H3 fails: {h3_printed.first_failure!r}")
        return ok, detail

    run_criterion(record, 1, body)


def test_criterion_2_six_ray_enumeration(record):
    def body():
        V = fixtures.six_rays()
        got = {oracles.decomposition_key(D) for D in enumerate_decompositions(V)}
        hand = oracles.six_ray_hand_solutions()
        brute = oracles.star_decompositions(fixtures.six_ray_directions(), (2,) * 6)
        ok = len(got) == 2 and got == hand == brute
        return ok, f"{len(got)} decompositions; equal to hand solution={got == hand}, brute force={got == brute}"

    run_criterion(record, 2, body)


def test_criterion_3_decompose_verifies(record):
    def body():
        named = {
            "six-rays": fixtures.six_rays(),
            "crossing-segment x2": fixtures.crossing_segment(2),
            "y-junction": fixtures.y_junction(),
            "tent": fixtures.tent(),
            "two-segments": fixtures.two_disjoint_segments(),
        }
        failures = []
        for name, V in named.items():
            D = decompose(V)
            if D.partial or not verify_decomposition(V, D).ok:
                failures.append(name)
        w_plus_w = oracles.decomposition_key(decompose(named["crossing-segment x2"])) == (((1,), 2),)
        fuzz_bad = 0
        for V in fuzzed_stars():
            D = decompose(V)
            if D.partial or not verify_decomposition(V, D).ok:
                fuzz_bad += 1
        ok = not failures and w_plus_w and fuzz_bad == 0
        return ok, (f"{len(named) - len(failures)}/{len(named)} fixtures verify; crossing segment gives "
                    f"W + W: {w_plus_w}; fuzzed {N_FUZZ - fuzz_bad}/{N_FUZZ} verify")

    run_criterion(record, 3, body)


def test_criterion_4_oracle_equivalence(record):
    def body():
        checked = contained = agree = 0
        for V in fuzzed_stars():
            if sum(V.mult) > 12:
                continue
            checked += 1
            keys = [oracles.decomposition_key(D) for D in enumerate_decompositions(V)]
            contained += oracles.decomposition_key(decompose(V)) in keys
            brute = oracles.star_decompositions(oracles.star_directions(V), [int(m) for m in V.mult])
            agree += set(keys) == brute
        ok = checked > 0 and contained == checked and agree == checked
        return ok, (f"{contained}/{checked} fuzzed instances with mass <= 12 have decompose's result "
                    f"in the enumeration; enumeration equals brute force on {agree}/{checked}")

    run_criterion(record, 4, body)


def test_criterion_5_empty_boundary_implies_split(record):
    def body():
        rng = np.random.default_rng(FUZZ_SEED + 5)
        empty = failures = 0
        proper = 0
        while empty < 100:
            V, E = fixtures.random_cluster_network(rng)
            if not v_boundary(V, E).is_empty():
                continue
            empty += 1
            R, m = split_by_region(V, E)
            if m.is_zero() or tuple(m.values) == tuple(R.mult):
                ok = split_identity(R, m)
            else:
                proper += 1
                ok = check_split(R, m)
            failures += not ok
        return failures == 0, (f"{empty} pairs with empty boundary ({proper} proper restrictions), "
                               f"{failures} failures")

    run_criterion(record, 5, body)


def test_criterion_6_split_iff_empty_boundary(record):
    def body():
        rng = np.random.default_rng(FUZZ_SEED + 6)
        cases = {
            "six unit rays": fixtures.six_rays((1,) * 6),
            "y-junction": fixtures.y_junction(),
            "two chords": fixtures.two_chords(),
            "cross": fixtures.cross(),
            "chord": fixtures.crossing_segment(1),
        }
        failures, tally = 0, {"split+empty": 0, "nosplit+nonempty": 0}
        for name, V in cases.items():
            assert first_variation(V).is_empty() and set(V.mult) == {1}
            radius = V.window.shape.radius
            for k in range(100):
                make = halfplane_in(radius) if k % 2 == 0 else wedge_in(radius)
                E = generic_region(rng, V, make)
                R, m = split_by_region(V, E)
                split = split_identity(R, m)
                empty = v_boundary(V, E).is_empty()
                if split != empty:
                    failures += 1
                else:
                    tally["split+empty" if split else "nosplit+nonempty"] += 1
        T = fixtures.tent()
        legs = [0] * T.n_edges
        for e in fixtures.tent_legs(T):
            legs[e] = 1
        tent_split = check_split(T, S(legs))
        tent_boundary = v_boundary(T, fixtures.tent_region(0.05))
        tent_ok = tent_split and not tent_boundary.is_empty()
        ok = failures == 0 and tent_ok and all(tally.values())
        return ok, (f"{5 * 100} regions, {failures} failures ({tally}); tent: split={tent_split}, "
                    f"boundary atoms={len(tent_boundary)}")

    run_criterion(record, 6, body)


def test_criterion_7_measure_identities(record):
    def body():
        rng = np.random.default_rng(FUZZ_SEED + 7)
        checks = bad = 0
        for name, V in all_fixtures().items():
            radius = V.window.shape.radius
            T = first_variation(V)
            for _ in range(20):
                E = generic_region(rng, V, halfplane_in(radius))
                B = v_boundary(V, E)
                for M in (T, B):
                    try:
                        lhs = total_variation_measure(restrict_measure(M, E))
                        rhs = total_variation_measure(M).restrict(E)
                    except NonGenericRegionError:
                        continue
                    checks += 1
                    bad += not lhs.allclose(rhs, EPS_NUM)
                checks += 1
                bad += not v_boundary(V, E.complemented()).allclose(-B, EPS_NUM)
                part = restrict(V, E)
                if not part.is_zero():
                    checks += 1
                    bad += not first_variation(add(V, part)).allclose(T + first_variation(part), EPS_NUM)
            for k in (1, 2, 3):
                checks += 2
                bad += not first_variation(scalar_multiple(V, k)).allclose(T * k, EPS_NUM)
                bad += not first_variation(add(V, scalar_multiple(V, k))).allclose(T * (k + 1), EPS_NUM)
        return bad == 0, f"{checks} identity checks on {len(all_fixtures())} fixtures, {bad} failures"

    run_criterion(record, 7, body)


def random_apriori_case(rng, V):
    """Draw (a, r, c, d) satisfying the hypotheses, or None."""
    W = V.window
    arr = V.arrangement
    e = int(rng.integers(V.n_edges))
    p, q = arr.segment(e)
    a = p + rng.uniform(0.0, 1.0) * (q - p)
    if rng.random() < 0.2 and arr.n_vertices:
        a = arr.vertex_array[int(rng.integers(arr.n_vertices))]
    room = W.depth(a)
    if room <= 0.05:
        return None
    r = rng.uniform(0.02, min(room * 0.999, 4.0))
    theta = float(density(V, a))
    if theta <= 0:
        return None
    d = theta * rng.uniform(0.1, 1.0)
    tv = total_variation_measure(first_variation(V))
    c_min = 0.0
    for x in tv.points:
        rho = float(np.linalg.norm(x - a))
        if rho <= V.eps:
            return None
        if rho < r:
            c_min = max(c_min, tv.mass_in_ball(a, rho) / (2 * rho))
    c = c_min * (1 + 1e-6) + rng.uniform(1e-3, 1.0)
    return a, r, c, d


def test_criterion_8_apriori_estimate(record):
    def body():
        rng = np.random.default_rng(FUZZ_SEED + 8)
        worst, bad, total = math.inf, 0, 0
        for name, V in all_fixtures().items():
            held = 0
            for _ in range(10000):
                if held == 100:
                    break
                case = random_apriori_case(rng, V)
                if case is None:
                    continue
                res = apriori_check(V, *case)
                if not res.hypotheses_hold:
                    continue
                held += 1
                worst = min(worst, res.margin)
                bad += res.margin < -EPS_NUM
            total += held
            assert held == 100, f"{name}: only {held} hypothesis-satisfying cases"
        return bad == 0, f"{total} cases over {len(all_fixtures())} fixtures, worst margin {worst:.6g}, {bad} violations"

    run_criterion(record, 8, body)


def test_criterion_9_strong_distance(record):
    def body():
        rng = np.random.default_rng(FUZZ_SEED + 9)
        bad = 0
        for _ in range(100):
            U, V, W = (fixtures.random_star(rng) for _ in range(3))
            if rng.random() < 0.5:
                K = Ball(rng.uniform(-3, 3, 2), rng.uniform(0.5, 6.0))
            else:
                lo = rng.uniform(-5, 0, 2)
                K = Box(lo, lo + rng.uniform(0.5, 5.0, 2))
            duv, dvw, duw = (strong_distance(x, y, K) for x, y in ((U, V), (V, W), (U, W)))
            bad += abs(duv - strong_distance(V, U, K)) > 3 * EPS_NUM
            bad += duw > duv + dvw + 3 * EPS_NUM
            bad += strong_distance(U, U, K) != 0.0
        W2 = fixtures.unit_segment().window
        seg2 = PolyhedralVarifold.from_segments([((-1.0, 0.0), (1.0, 0.0))], [2], W2)
        seg1 = PolyhedralVarifold.from_segments([((-1.0, 0.0), (1.0, 0.0))], [1], W2)
        hand = {L: strong_distance(seg2, seg1, Ball((0.0, 0.0), L / 2)) for L in (0.5, 1.0, 2.0)}
        hand_ok = all(abs(v - L) <= EPS_NUM for L, v in hand.items())
        zero = strong_distance(seg2, seg2, Ball((0.0, 0.0), 1.5)) == 0.0
        return bad == 0 and hand_ok and zero, (f"100 random triples, {bad} axiom violations; "
                                               f"|2-1|*L hand values {hand}; d(V, V) = 0: {zero}")

    run_criterion(record, 9, body)


def test_criterion_10_determinism(record, tmp_path):
    def body():
        env = dict(os.environ)
        env.pop("VARIFOLD_CAP", None)
        for name in ("six-rays", "tent"):
            subprocess.run([sys.executable, "-m", "segvarifold", "demo", name], check=True,
                           cwd=tmp_path, capture_output=True, env=env)
        outputs = []
        for hashseed in ("1", "2"):
            env["PYTHONHASHSEED"] = hashseed
            outputs.append([subprocess.run([sys.executable, "-m", "segvarifold", cmd, f"{name}.json"],
                                           check=True, cwd=tmp_path, capture_output=True, env=env).stdout
                            for name in ("six-rays", "tent") for cmd in ("decompose", "enumerate")])
        same = outputs[0] == outputs[1]
        return same, f"decompose and enumerate on 2 networks, byte-identical across 2 runs: {same}"

    run_criterion(record, 10, body)
