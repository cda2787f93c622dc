import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tentmorph.commuter import (
    CommuterEvaluator,
    Convention,
    NotAPreimage,
    gap_exclusion_violations,
    preimage_level,
)
from tentmorph.numerics import ContractViolation, Enclosure
from tentmorph.tentmap import FULL_TENT, TentMap

F = Fraction
EV34 = CommuterEvaluator(F(3, 4))
ID = CommuterEvaluator(F(1))
mus = st.fractions(min_value=F(1, 2), max_value=1, max_denominator=300).filter(lambda m: m > F(1, 2))
xs = st.fractions(min_value=0, max_value=1, max_denominator=10**4)

# f_30(3/4) at mu = 3/4, from the naive recursion in tests/oracles.py
F30_PEAK = F(3866808300519081399, 4611686018427387904)


def test_eval_depth_examples(backend):
    assert EV34.eval_depth(0, 25) == 0
    assert EV34.eval_depth(1, 25) == 1
    assert ID.eval_depth(F(2, 5), 17) == F(2, 5)
    assert EV34.eval_depth(F(1, 2), 1) == F(3, 8)
    assert EV34.eval_depth(F(3, 10), 10) == F(2074867, 10485760)
    assert EV34.eval_depth(F(3, 4), 30) == F30_PEAK


@settings(max_examples=80, deadline=None)
@given(mus, xs, st.integers(0, 24))
def test_eval_depth_matches_recursion(mu, x, d):
    assert CommuterEvaluator(mu).eval_depth(x, d) == oracles.commuter(mu, x, d)


@settings(max_examples=40, deadline=None)
@given(mus, xs, st.integers(1, 24))
def test_half_in_right_convention(mu, x, d):
    ev = CommuterEvaluator(mu, Convention.HALF_IN_RIGHT)
    assert ev.eval_depth(x, d) == oracles.commuter(mu, x, d, left_closed=False)


def test_conventions_differ_only_on_preimages():
    left = CommuterEvaluator(F(4, 5))
    right = CommuterEvaluator(F(4, 5), Convention.HALF_IN_RIGHT)
    assert left.eval_depth(F(1, 2), 12) != right.eval_depth(F(1, 2), 12)
    assert left.eval_depth(F(3, 10), 12) == right.eval_depth(F(3, 10), 12)


def test_eval_many_matches_pointwise(backend):
    pts = [F(i, 37) for i in range(38)] + [F(i, 1000) for i in range(0, 1001, 17)]
    ev = CommuterEvaluator(F(7, 9))
    assert ev.eval_many(pts, 22) == [ev.eval_depth(x, 22) for x in pts]


def test_enclosure_examples():
    assert EV34.eval(0, 10) == Enclosure(0, F(1, 2**10))
    e = ID.eval(F(2, 5), 10)
    assert F(2, 5) in e and e.width <= F(1, 2**9)
    peak = EV34.eval(F(3, 4), 30)
    assert peak.width <= F(1, 2**29) and peak.hi < 1
    assert 1 in ID.eval_at_peak(10)
    inner = EV34.eval_at_peak(30)
    assert 0 < inner.lo and inner.hi < 1


def test_enclosures_nest_with_depth():
    for d in range(5, 40, 5):
        outer = EV34.eval(F(3, 4), d)
        inner = EV34.eval(F(3, 4), d + 5)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


def test_enclosure_contains_deep_value():
    rng = random.Random(5)
    for _ in range(50):
        mu = F(rng.randint(51, 100), 100)
        x = F(rng.randint(0, 999), 999)
        assert CommuterEvaluator(mu).eval_depth(x, 60) in CommuterEvaluator(mu).eval(x, 20)


def test_capped_enclosure_stays_outward():
    ev = CommuterEvaluator(F(3, 4), max_denominator=10**6)
    e = ev.eval(F(3, 10), 40)
    assert e.lo.denominator <= 10**6 and e.hi.denominator <= 10**6
    assert EV34.eval(F(3, 10), 40).lo >= e.lo and EV34.eval(F(3, 10), 40).hi <= e.hi


def test_half_value_identity():
    for d in (10, 20, 30):
        assert 2 * EV34.eval(F(1, 2), d).midpoint == EV34.eval_at_peak(d - 1).midpoint


@pytest.mark.parametrize("mu, x, d", [(F(3, 4), F(3, 10), 12), (1, F(7, 13), 9), (F(4, 5), F(1, 2), 5)])
def test_residual_examples(mu, x, d):
    assert CommuterEvaluator(mu).commutation_residual(x, d) == 0


@settings(max_examples=100, deadline=None)
@given(mus, xs, st.integers(1, 30))
def test_residual_zero(mu, x, d):
    assert CommuterEvaluator(mu).commutation_residual(x, d) == 0


def test_monotone_on_sorted_grid():
    ev = CommuterEvaluator(F(5, 7))
    pts = [F(i, 500) for i in range(501)]
    vals = ev.eval_many(pts, 30)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_cauchy_rate():
    x = F(2, 7)
    for d in range(1, 30):
        assert abs(EV34.eval_depth(x, d + 1) - EV34.eval_depth(x, d)) <= F(1, 2**d)


def test_jump_at_half():
    probe = EV34.jump_at(F(1, 2), 30, F(1, 2**20))
    assert probe.certified and probe.level == 0
    peak = EV34.eval_at_peak(30)
    assert 1 - peak.hi - F(1, 2**18) < probe.value < 1 - peak.lo + F(1, 2**18)


def test_jump_for_identity_not_certified():
    probe = ID.jump_at(F(1, 2), 20, F(1, 2**10))
    assert probe.value == F(1, 2**9)
    assert not probe.certified


def test_jump_at_depth_one_preimage():
    probe = EV34.jump_at(F(1, 3), 30, F(1, 2**20))
    assert probe.level == 1 and probe.certified


def test_jump_rejects_non_preimage():
    with pytest.raises(NotAPreimage):
        EV34.jump_at(F(3, 10), 30)


def test_preimage_level():
    assert preimage_level(TentMap(F(3, 4)), F(73, 81), 10) == 4
    assert preimage_level(FULL_TENT, F(1, 3), 30) is None


def test_gap_examples():
    gaps = EV34.range_gaps(2, 40)
    peak = EV34.eval_at_peak(40)
    first = [g for g in gaps if g.level == 1]
    assert len(first) == 1 and first[0].center == F(1, 2)
    assert first[0].radius_lo == (1 - peak.hi) / 2
    assert [g.center for g in gaps if g.level == 2] == [F(1, 4), F(3, 4)]
    assert ID.range_gaps(4, 10) == []


def test_gaps_are_avoided():
    gaps = EV34.range_gaps(4, 40)
    assert len(gaps) == 15
    pts = [F(i, 2000) for i in range(2001)]
    assert gap_exclusion_violations(EV34, gaps, pts, 40) == []


def test_uniform_distance_examples():
    assert ID.uniform_distance_to_identity(200, 15) == 0
    assert EV34.uniform_distance_to_identity(1000, 30) <= F(1, 4) + F(1, 2**30)
    ev = CommuterEvaluator(F(99, 100))
    assert ev.uniform_distance_to_identity(1000, 30) <= F(1, 100) + F(1, 2**30)


def test_argument_checks():
    with pytest.raises(ContractViolation):
        EV34.eval(F(1, 2), 0)
    with pytest.raises(ContractViolation):
        EV34.commutation_residual(F(1, 2), 0)
    with pytest.raises(ContractViolation):
        CommuterEvaluator(F(1, 2))
