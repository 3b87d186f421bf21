from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from segvarifold import fixtures
from segvarifold.decompose import (
    SplitMultiset,
    check_split,
    collinear_nonneg,
    decompose,
    default_cap,
    enumerate_decompositions,
    find_split,
    is_component,
    is_indecomposable,
    is_maximal,
    split_identity,
    verify_decomposition,
)
from segvarifold.errors import InvalidSubMultiplicity, SearchCapExceeded, VarifoldError
from segvarifold.geometry import Region
from segvarifold.variation import apriori_check, first_variation
from segvarifold.varifold import AppropriateClass, PolyhedralVarifold, SubMultiplicity, sub_varifold

seeds = st.integers(0, 2**32 - 1)
S = SubMultiplicity.of

LINES = [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)]
TRIDENT_1 = (1, 0, 2, 0, 2, 0)
TRIDENT_2 = (0, 2, 0, 1, 0, 2)


def six(mults=(2,) * 6):
    return fixtures.six_rays(mults)


def multiset(V, parts):
    return SplitMultiset(V, tuple((S(m), c) for m, c in parts))


# --------------------------------------------------------------------------
# the collinearity test


def test_collinear_nonneg():
    v = np.array([2.0, 0.0])
    assert collinear_nonneg(np.array([1.0, 0.0]), v)
    assert collinear_nonneg(np.zeros(2), v)
    assert not collinear_nonneg(np.array([-1.0, 0.0]), v)
    assert not collinear_nonneg(np.array([1.0, 0.1]), v)
    assert collinear_nonneg(np.zeros(2), np.zeros(2))
    assert not collinear_nonneg(np.array([0.0, 1e-6]), np.zeros(2))


# --------------------------------------------------------------------------
# single splits


def test_check_split_examples():
    V = six()
    assert check_split(V, S(LINES[0]))
    assert not check_split(V, S((1, 0, 0, 0, 0, 0)))
    assert check_split(fixtures.crossing_segment(2), S((1,)))


def test_check_split_rejects_trivial_and_invalid_parts():
    V = six()
    with pytest.raises(InvalidSubMultiplicity):
        check_split(V, S((0,) * 6))
    with pytest.raises(InvalidSubMultiplicity):
        check_split(V, S((2,) * 6))
    with pytest.raises(InvalidSubMultiplicity):
        check_split(V, S((3, 0, 0, 0, 0, 0)))
    assert split_identity(V, S((0,) * 6)) and split_identity(V, S((2,) * 6))


def test_split_needs_both_sides_aligned():
    # at the origin vec(V) = (-2, 0); W = (3, 0) overshoots and leaves V - W pointing at (1, 0)
    V = PolyhedralVarifold.from_segments([((0.0, 0.0), (1.0, 0.0)), ((0.0, 0.0), (-1.0, 0.0))],
                                         [3, 1], fixtures.unit_segment().window)
    assert not check_split(V, S((3, 0)))
    assert check_split(V, S((2, 0)))
    assert check_split(V, S((1, 1)))


def test_find_split_examples():
    assert find_split(six()).values == LINES[0]
    assert find_split(fixtures.y_junction()) is None
    assert find_split(fixtures.unit_segment()) is None
    with pytest.raises(VarifoldError):
        find_split(PolyhedralVarifold.zero(fixtures.unit_segment().window))


def test_is_indecomposable_examples():
    V = six()
    assert is_indecomposable(sub_varifold(V, S(TRIDENT_1)))
    assert not is_indecomposable(six((1,) * 6))
    assert not is_indecomposable(fixtures.two_disjoint_segments())
    assert is_indecomposable(fixtures.y_junction())


def test_is_component_examples():
    V = six()
    assert is_component(V, S(LINES[0]))
    assert not is_component(V, S((1, 0, 0, 0, 0, 0)))
    assert is_component(fixtures.crossing_segment(2), S((1,)))
    assert not is_component(V, S((2, 0, 0, 2, 0, 0)))
    assert not is_component(V, S((0,) * 6))


def test_search_cap_reports_undecided():
    with pytest.raises(SearchCapExceeded, match="undecided"):
        find_split(fixtures.y_junction(), cap=2)
    D = decompose(six(), cap=2)
    assert D.partial and D.undecided


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("VARIFOLD_CAP", "123")
    assert default_cap() == 123
    monkeypatch.delenv("VARIFOLD_CAP")
    assert default_cap() == 10**7


# --------------------------------------------------------------------------
# multisets


def test_split_multiset_merges_and_validates():
    V = six()
    ms = multiset(V, [(LINES[0], 1), (LINES[0], 1)])
    assert ms.parts == ((S(LINES[0]), 2),)
    assert ms.total_count() == 2
    with pytest.raises(InvalidSubMultiplicity):
        multiset(V, [(LINES[0], 0)])
    with pytest.raises(InvalidSubMultiplicity):
        multiset(V, [((0,) * 6, 1)])
    with pytest.raises(InvalidSubMultiplicity):
        multiset(V, [(LINES[0], 3)])


# --------------------------------------------------------------------------
# decompose and enumerate


def test_decompose_examples():
    V = six()
    D = decompose(V)
    assert verify_decomposition(V, D).ok and not D.partial
    C = fixtures.crossing_segment(2)
    assert oracles.decomposition_key(decompose(C)) == (((1,), 2),)
    Y = fixtures.y_junction()
    assert oracles.decomposition_key(decompose(Y)) == (((1, 1, 1), 1),)


def test_decompose_tent_and_disjoint_segments():
    for V in (fixtures.tent(), fixtures.two_disjoint_segments(), fixtures.cross(mult=2)):
        D = decompose(V)
        assert verify_decomposition(V, D).ok
    legs = fixtures.tent_legs(fixtures.tent())
    parts = [m.support() for m, _ in decompose(fixtures.tent()).parts]
    assert sorted(legs) in parts


def test_enumerate_examples():
    keys = {oracles.decomposition_key(D) for D in enumerate_decompositions(six())}
    assert keys == oracles.six_ray_hand_solutions()
    assert len(enumerate_decompositions(fixtures.crossing_segment(2))) == 1
    assert [oracles.decomposition_key(D) for D in enumerate_decompositions(fixtures.y_junction())] \
        == [(((1, 1, 1), 1),)]


def test_enumerate_refuses_large_instances():
    with pytest.raises(SearchCapExceeded):
        enumerate_decompositions(six((5,) * 6))


def test_grid_class_decompositions():
    C = AppropriateClass.grid(2, [(1, None)])
    W = fixtures.crossing_segment().window
    V = PolyhedralVarifold.from_segments([((-3.0, 0.0), (3.0, 0.0))], [3], W, C)
    keys = {tuple((m.values, c) for m, c in D.parts) for D in enumerate_decompositions(V)}
    assert keys == {(((Fraction(1),), 3),), (((Fraction(3, 2),), 2),)}
    assert verify_decomposition(V, decompose(V)).ok


# --------------------------------------------------------------------------
# verification


def test_verify_examples():
    V = six()
    assert verify_decomposition(V, multiset(V, [(m, 2) for m in LINES])).ok
    printed = verify_decomposition(V, multiset(V, [(TRIDENT_1, 1), (TRIDENT_2, 1)]))
    assert not printed.weight_ok and printed.component_ok
    assert "edgewise sum mismatch" in printed.first_failure
    assert "edge 0: 1 vs 2" in printed.first_failure and "edge 3: 1 vs 2" in printed.first_failure
    fixed = multiset(V, [(TRIDENT_1, 1), (TRIDENT_2, 1), (LINES[0], 1)])
    assert verify_decomposition(V, fixed).ok


def test_verify_flags_decomposable_members():
    V = six()
    rep = verify_decomposition(V, multiset(V, [((1,) * 6, 2)]))
    assert not rep.component_ok and rep.weight_ok and rep.variation_ok
    assert "member decomposable" in rep.first_failure


def test_verify_flags_non_splitting_parts():
    V = six()
    rep = verify_decomposition(V, multiset(V, [((2, 0, 0, 0, 0, 0), 1)]))
    assert not rep.component_ok and "does not split" in rep.first_failure
    assert not rep.variation_ok


# --------------------------------------------------------------------------
# maximality


def test_is_maximal_examples():
    C = fixtures.crossing_segment(2)
    assert is_maximal(multiset(C, [((1,), 2)]))
    assert not is_maximal(multiset(C, [((2,), 1)]))
    Y = fixtures.y_junction()
    assert is_maximal(multiset(Y, [((1, 1, 1), 1)]))


def test_is_maximal_on_a_sub_sum():
    V = six()
    assert is_maximal(multiset(V, [(LINES[0], 2)]))
    assert not is_maximal(multiset(V, [((2, 0, 0, 2, 0, 0), 1)]))
    assert is_maximal(multiset(V, [(m, 2) for m in LINES]))


def test_is_maximal_requires_weight_in_b():
    C = fixtures.crossing_segment(2)
    with pytest.raises(VarifoldError):
        is_maximal(multiset(C, [((1,), 2)]), Region.halfspace((0.0, 1.0), 1.0))


# --------------------------------------------------------------------------
# properties on fuzzed stars


def star_with_rng(seed):
    rng = np.random.default_rng(seed)
    return fixtures.random_star(rng), rng


@given(seeds)
def test_split_is_transitive(seed):
    V, rng = star_with_rng(seed)
    outer = [m for m in enumerate_parts(V) if check_split(V, m)]
    if not outer:
        return
    m = outer[int(rng.integers(len(outer)))]
    W = sub_varifold(V, m)
    support = m.support()
    for inner in enumerate_parts(W):
        if check_split(W, inner):
            lifted = [Fraction(0)] * V.n_edges
            for k, e in enumerate(support):
                lifted[e] = inner.values[k]
            assert check_split(V, S(lifted))


def enumerate_parts(V):
    """Every proper nonzero integer sub-multiplicity (stars are small)."""
    import itertools
    top = [int(x) for x in V.mult]
    for x in itertools.product(*(range(k + 1) for k in top)):
        if any(x) and list(x) != top:
            yield S(x)


@given(seeds)
def test_decompose_output_verifies_and_is_enumerated(seed):
    V, _ = star_with_rng(seed)
    D = decompose(V)
    rep = verify_decomposition(V, D)
    assert rep.ok, rep.failures
    keys = {oracles.decomposition_key(E) for E in enumerate_decompositions(V)}
    assert oracles.decomposition_key(D) in keys


@given(seeds)
def test_randomized_decompose_also_verifies(seed):
    V, rng = star_with_rng(seed)
    D = decompose(V, rng=rng)
    assert verify_decomposition(V, D).ok


@given(seeds)
def test_enumeration_matches_balance_oracle(seed):
    V, _ = star_with_rng(seed)
    dirs = oracles.star_directions(V)
    got = {oracles.decomposition_key(D) for D in enumerate_decompositions(V)}
    assert got == oracles.star_decompositions(dirs, [int(m) for m in V.mult])


@given(seeds)
def test_enumerated_parts_are_connected(seed):
    V, _ = star_with_rng(seed)
    for D in enumerate_decompositions(V):
        for m, _ in D.parts:
            assert len(V.arrangement.connected_components(m.support())) == 1


@settings(max_examples=20)
@given(seeds)
def test_variation_condition_follows_from_the_others(seed):
    V, _ = star_with_rng(seed)
    for D in enumerate_decompositions(V):
        rep = verify_decomposition(V, D)
        assert rep.component_ok and rep.weight_ok
        assert rep.variation_ok


def test_variation_condition_on_a_non_stationary_network():
    V = fixtures.tent()
    for D in enumerate_decompositions(V):
        assert verify_decomposition(V, D).ok


@settings(max_examples=20)
@given(seeds)
def test_count_bound(seed):
    V, _ = star_with_rng(seed)
    center = V.arrangement.vertex_array[0]
    c, r = 0.01, 1.0
    for D in enumerate_decompositions(V):
        bounds = []
        for m, _ in D.parts:
            W = sub_varifold(V, m)
            p, q = V.arrangement.segment(m.support()[0])
            far = q if np.linalg.norm(q - center) > np.linalg.norm(p - center) else p
            a = center + 2.0 * (far - center) / np.linalg.norm(far - center)
            res = apriori_check(W, a, r, c, 1.0)
            assert res.hypotheses_hold and res.margin >= -1e-9
            bounds.append(res.lower_bound)
        assert D.multiset.total_count() <= V.total_mass() / min(bounds) + 1e-9


def test_first_variation_of_parts_adds_up():
    V = fixtures.tent()
    D = decompose(V)
    total = None
    for m, c in D.parts:
        T = first_variation(sub_varifold(V, m)) * c
        total = T if total is None else total + T
    assert total.allclose(first_variation(V))
