import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tentmorph.numerics import ContractViolation
from tentmorph.tentmap import (
    FULL_TENT,
    PiecewiseLinearMap,
    TentMap,
    find_interior_preimage,
    iterate,
    preimage_bound,
    preimages_of_half,
)

F = Fraction
mus = st.fractions(min_value=F(1, 2), max_value=1, max_denominator=100).filter(lambda m: m > F(1, 2))
xs = st.fractions(min_value=0, max_value=1, max_denominator=1000)


@pytest.mark.parametrize(
    "mu, x, y",
    [(1, F(23, 100), F(23, 50)), (F(3, 4), F(1, 2), F(3, 4)), (F(3, 4), F(3, 5), F(3, 5))],
)
def test_tent_examples(mu, x, y):
    assert TentMap(mu)(x) == y


def test_orbit_of_example_point():
    assert FULL_TENT.orbit(F(23, 100), 5) == [F(23, 100), F(46, 100), F(92, 100), F(16, 100), F(32, 100)]


@pytest.mark.parametrize("mu", [F(1, 2), F(1, 3), F(11, 10)])
def test_height_out_of_range(mu):
    with pytest.raises(ContractViolation):
        TentMap(mu)


def test_point_outside_unit_interval():
    with pytest.raises(ContractViolation):
        FULL_TENT(F(3, 2))


def test_iterate_full_tent():
    t1 = iterate(FULL_TENT, 1)
    assert t1.breakpoints == (0, F(1, 2), 1)
    assert t1.slopes == (2, -2)
    t2 = iterate(FULL_TENT, 2)
    assert t2.breakpoints == (0, F(1, 4), F(1, 2), F(3, 4), 1)
    assert t2.slopes == (4, -4, 4, -4)


def test_iterate_three_quarters():
    t2 = iterate(TentMap(F(3, 4)), 2)
    assert t2.breakpoints == (0, F(1, 3), F(1, 2), F(2, 3), 1)
    assert t2(F(1, 3)) == F(3, 4)


@settings(max_examples=50, deadline=None)
@given(mus, xs, st.integers(0, 6))
def test_iterate_matches_composition(mu, x, n):
    assert iterate(TentMap(mu), n)(x) == oracles.compose_power(mu, x, n)


def test_iterate_is_continuous_at_breakpoints():
    g = iterate(TentMap(F(5, 7)), 5)
    for lap_a, lap_b in zip(g.laps(), list(g.laps())[1:]):
        assert lap_a(lap_a.hi) == lap_b(lap_b.lo)


def test_piecewise_json_roundtrip():
    g = iterate(TentMap(F(3, 4)), 3)
    data = g.to_json()
    assert set(data) == {"breakpoints", "slopes", "intercepts"}
    assert all(isinstance(v, str) for v in data["breakpoints"])
    assert PiecewiseLinearMap.from_json(data) == g


def test_vertices_cover_endpoints():
    v = iterate(FULL_TENT, 2).vertices()
    assert v[0] == (0, 0) and v[-1] == (1, 0)
    assert (F(1, 4), 1) in v


@pytest.mark.parametrize(
    "mu, depth, expected",
    [
        (F(3, 4), 0, [F(1, 2)]),
        (1, 1, [F(1, 4), F(1, 2), F(3, 4)]),
        (F(3, 4), 1, [F(1, 3), F(1, 2), F(2, 3)]),
    ],
)
def test_preimages_of_half(mu, depth, expected):
    assert preimages_of_half(TentMap(mu), depth) == expected


def test_preimages_land_on_half():
    tent = TentMap(F(5, 6))
    for x in preimages_of_half(tent, 6):
        assert any(v == F(1, 2) for v in tent.orbit(x, 7))


def test_preimages_are_breakpoints_of_iterates():
    tent = TentMap(F(4, 5))
    interior = set(iterate(tent, 4).breakpoints[1:-1])
    assert interior <= set(preimages_of_half(tent, 3))


@pytest.mark.parametrize(
    "mu, x, y, expected",
    [(F(3, 4), F(2, 5), F(3, 5), (F(1, 2), 0)), (1, F(1, 5), F(3, 10), (F(1, 4), 1))],
)
def test_interior_preimage_examples(mu, x, y, expected):
    assert find_interior_preimage(TentMap(mu), x, y) == expected


def test_interior_preimage_near_one():
    tent = TentMap(F(3, 4))
    x0, n = find_interior_preimage(tent, F(9, 10), F(95, 100))
    assert tent.power(x0, n) == F(1, 2)
    assert F(9, 10) < x0 < F(95, 100)
    depth, hits = oracles.preimage_scan(F(3, 4), F(9, 10), F(95, 100))
    assert (depth, hits) == (n, [x0])
    assert (x0, n) == (F(73, 81), 4)


def test_interior_preimage_random_against_scan():
    rng = random.Random(7)
    for _ in range(40):
        mu = F(rng.randint(51, 100), 100)
        a = F(rng.randint(0, 990), 1000)
        b = a + F(rng.randint(5, 60), 1000)
        b = min(b, F(1))
        x0, n = find_interior_preimage(TentMap(mu), a, b)
        depth, hits = oracles.preimage_scan(mu, a, b)
        assert depth == n and hits == [x0]
        assert n <= preimage_bound(b - a, mu) + 2
