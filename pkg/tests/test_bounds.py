import random
from fractions import Fraction

import pytest

from tentmorph.bounds import (
    Avoidance,
    EstimateUndefined,
    ForbiddenStatus,
    NoThreshold,
    avoidance_threshold,
    certify_avoidance,
    conj3_bound,
    conjecture_evidence,
    evidence_grid,
    mu_estimate,
    mu_estimate_quadratic,
    mu_exact,
    mu_forbidden_report,
    peak_deviation_bound,
    peak_deviation_check,
    probe_sigma,
    render_estimate,
    shortest_certified_sigma,
    summarize_evidence,
    table1,
    table1_mismatches,
)
from tentmorph.commuter import CommuterEvaluator
from tentmorph.numerics import ContractViolation
from tentmorph.patterns import pat, sigma
from tentmorph.tentmap import TentMap

F = Fraction

PUBLISHED_EXACT = {
    4: "0.809017", 5: "0.919643", 6: "0.963781", 7: "0.982974", 8: "0.991791",
    9: "0.995982", 10: "0.998016", 11: "0.999015", 12: "0.999509",
}
PUBLISHED_ESTIMATE = {
    6: "0.923902", 7: "0.965933", 8: "0.983722", 9: "0.992030",
    10: "0.996055", 11: "0.998037", 12: "0.999021",
}


@pytest.mark.parametrize("n", sorted(PUBLISHED_ESTIMATE))
def test_estimate_renders_published(n):
    assert render_estimate(n) == PUBLISHED_ESTIMATE[n]


@pytest.mark.parametrize("n", [6, 9, 12, 20])
def test_estimate_routes_agree(n):
    a, b = mu_estimate(n), mu_estimate_quadratic(n)
    assert a.lo <= b.hi and b.lo <= a.hi
    assert a.width <= F(1, 10**9)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_estimate_undefined(n):
    with pytest.raises(EstimateUndefined):
        mu_estimate(n)


def test_estimate_below_true_threshold():
    for n in range(6, 13):
        assert mu_estimate(n).hi < float(PUBLISHED_EXACT[n])


def test_certify_avoidance_examples():
    assert certify_avoidance(F(3, 4), 6, 40) is Avoidance.CERTIFIED_AVOIDS
    for n in (3, 6, 12):
        assert certify_avoidance(1, n, 20) is Avoidance.NOT_APPLICABLE


def test_certify_just_below_estimate():
    mu = mu_estimate(7).lo - F(1, 10**6)
    assert certify_avoidance(mu, 7, 40) is Avoidance.CERTIFIED_AVOIDS
    # certified avoidance must agree with the exact predicate
    assert not probe_sigma(7, mu).allowed


def test_certification_is_sound():
    rng = random.Random(2)
    for _ in range(25):
        mu = F(rng.randint(501, 999), 1000)
        for n in range(4, 9):
            if certify_avoidance(mu, n, 40) is Avoidance.CERTIFIED_AVOIDS:
                assert not probe_sigma(n, mu).allowed


def test_avoidance_threshold_values():
    assert avoidance_threshold(4) == F(6, 7)
    assert avoidance_threshold(6) == 2 * (1 - F(16, 31))


def test_shortest_certified_sigma():
    assert shortest_certified_sigma(1, 20) is None
    n = shortest_certified_sigma(F(3, 4), 40)
    assert n is not None and certify_avoidance(F(3, 4), n, 40) is Avoidance.CERTIFIED_AVOIDS
    assert certify_avoidance(F(3, 4), n - 1, 40) is not Avoidance.CERTIFIED_AVOIDS


@pytest.mark.parametrize("mu", [1, F(3, 4), F(51, 100)])
def test_peak_deviation_examples(mu):
    assert peak_deviation_check(mu, 40)


def test_peak_deviation_bound_values():
    assert peak_deviation_bound(F(1)) == 0
    assert peak_deviation_bound(F(3, 4)) == F(1, 8) + F(1, 16)


@pytest.mark.parametrize("n, text", [(4, "0.809017"), (6, "0.963781")])
def test_mu_exact_examples(n, text):
    b = mu_exact(n, F(1, 10**6))
    assert b.rendered == text and b.stable
    assert not probe_sigma(n, b.lo).allowed
    assert probe_sigma(n, b.hi).allowed
    lo, hi = b.hi_witness
    x = (lo + hi) / 2
    assert pat(x, TentMap(b.hi), n) == sigma(n)


def test_mu_exact_rejects_small_n():
    with pytest.raises(NoThreshold):
        mu_exact(3)
    with pytest.raises(ContractViolation):
        mu_exact(2)


def test_table_rows():
    rows = {r.n: r for r in table1(4, 10)}
    assert rows[8].mu_exact_6dp == "0.991791" and rows[8].mu_estimate_6dp == "0.983722"
    assert rows[10].mu_exact_6dp == "0.998016" and rows[10].mu_estimate_6dp == "0.996055"
    assert not rows[4].estimate_defined and rows[4].csv_fields()[4] == ""
    assert table1_mismatches(list(rows.values())) == []


def test_table_range_check():
    with pytest.raises(ContractViolation):
        table1(3, 5)


def test_mu_forbidden_report():
    r = mu_forbidden_report(F(3, 4), "3412")
    assert r.status is ForbiddenStatus.MU_FORBIDDEN
    r = mu_forbidden_report(F(3, 4), "231")
    assert r.status is ForbiddenStatus.ALLOWED and pat(r.witness, TentMap(F(3, 4)), 3) == sigma(3)
    assert mu_forbidden_report(F(3, 4), "321").status is ForbiddenStatus.UNKNOWN


def test_conj3_bound_values():
    assert conj3_bound(F(1)) == 1
    assert conj3_bound(F(3, 4)) == F(7, 8)


def test_evidence_rows():
    rows = conjecture_evidence(4, 40)
    assert [r.mu for r in rows] == evidence_grid(4) == [F(5, 8), F(3, 4), F(7, 8), F(1)]
    last = rows[-1]
    assert 1 in last.peak and last.conj3_bound == 1 and last.conj3_ok
    mid = rows[1]
    assert mid.conj3_bound == F(7, 8)
    assert mid.peak.lo <= F(7, 8) + F(1, 2**40)
    assert mid.peak == CommuterEvaluator(F(3, 4)).eval_at_peak(40)
    assert rows[0].step == ""
    assert all(r.step in {"up", "down", "unknown"} for r in rows[1:])
    assert len(last.csv_fields()) == 6


def test_evidence_summary_small_grid():
    summary = summarize_evidence(conjecture_evidence(40, 40))
    assert summary.clean
    assert summary.certified_increases > 0
