"""Heights below which ``T_mu`` avoids ``sigma_n``.

Three kinds of bound live here:

* a sufficient condition on ``h_mu(mu)`` (a certified comparison against
  an exact rational threshold),
* the closed-form sufficient bound on ``mu`` itself,
* the true threshold, bracketed by bisection on the exact predicate
  "``sigma_n`` is realized by ``T_mu``".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .commuter import DEFAULT_DEPTH, CommuterEvaluator
from .numerics import (
    HALF,
    ONE,
    ContractViolation,
    Enclosure,
    RationalLike,
    as_rational,
    distance_to_rounding_boundary,
    round_half_even,
    sqrt_enclosure,
)
from .patterns import (
    Permutation,
    coerce_permutation,
    realization_intervals,
    sigma,
)
from .tentmap import FULL_TENT, TentMap

DEFAULT_TOL = Fraction(1, 10**7)
ESTIMATE_WIDTH = Fraction(1, 10**9)
TABLE_DIGITS = 6
MAX_TIGHTENINGS = 6

# Published six-decimal values: n -> (true threshold, closed-form estimate).
TABLE1: dict[int, tuple[str, str | None]] = {
    4: ("0.809017", None),
    5: ("0.919643", None),
    6: ("0.963781", "0.923902"),
    7: ("0.982974", "0.965933"),
    8: ("0.991791", "0.983722"),
    9: ("0.995982", "0.992030"),
    10: ("0.998016", "0.996055"),
    11: ("0.999015", "0.998037"),
    12: ("0.999509", "0.999021"),
}


class EstimateUndefined(ValueError):
    """The closed-form bound has a negative radicand (n <= 5)."""


class NoThreshold(ValueError):
    """``sigma_n`` is realized for every height in (1/2, 1]."""


class NonMonotoneThreshold(RuntimeError):
    """The avoidance predicate switched back and forth along the height axis."""


# -- closed-form estimate --------------------------------------------------


def estimate_radicand(n: int) -> Fraction:
    return 9 - Fraction(2 ** (n + 2) + 8, 2 ** (n - 1) - 1)


def mu_estimate(n: int, width: RationalLike = ESTIMATE_WIDTH) -> Enclosure:
    """Enclosure of ``3/4 + sqrt(9 - (2^(n+2)+8)/(2^(n-1)-1)) / 4``."""
    if n <= 5:
        raise EstimateUndefined(f"closed-form bound needs n > 5, got {n}")
    root = sqrt_enclosure(estimate_radicand(n), 4 * as_rational(width))
    return Fraction(3, 4) + root * Fraction(1, 4)


def mu_estimate_quadratic(n: int, width: RationalLike = ESTIMATE_WIDTH) -> Enclosure:
    """Larger root of ``mu^2 - 3/2 mu + (2^(n-1)+1)/(2^n-2)`` by sign bisection."""
    if n <= 5:
        raise EstimateUndefined(f"closed-form bound needs n > 5, got {n}")
    c = Fraction(2 ** (n - 1) + 1, 2**n - 2)

    def g(m: Fraction) -> Fraction:
        return m * m - Fraction(3, 2) * m + c

    lo, hi = Fraction(3, 4), ONE
    assert g(lo) < 0 < g(hi)
    width = as_rational(width)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return Enclosure(lo, hi)


def render_estimate(n: int, digits: int = TABLE_DIGITS) -> str:
    width = ESTIMATE_WIDTH
    for _ in range(MAX_TIGHTENINGS):
        e = mu_estimate(n, width)
        lo, hi = round_half_even(e.lo, digits), round_half_even(e.hi, digits)
        if lo == hi:
            return lo
        width /= 100
    raise ArithmeticError(f"estimate for n={n} sits on a rounding boundary")


# -- sufficient conditions through the commuter ----------------------------


class Avoidance(enum.Enum):
    CERTIFIED_AVOIDS = "certified_avoids"
    NOT_APPLICABLE = "not_applicable"
    UNKNOWN = "unknown"


def avoidance_threshold(n: int) -> Fraction:
    """``2 (1 - 2^(n-2)/(2^(n-1)-1))``: peak values below it force avoidance of sigma_n."""
    return 2 * (1 - Fraction(2 ** (n - 2), 2 ** (n - 1) - 1))


def certify_avoidance(mu: RationalLike, n: int, d: int = DEFAULT_DEPTH, peak: Enclosure | None = None) -> Avoidance:
    if n < 3 or d < 1:
        raise ContractViolation("need n >= 3 and d >= 1")
    if peak is None:
        peak = CommuterEvaluator(as_rational(mu)).eval_at_peak(d)
    t = avoidance_threshold(n)
    if peak.hi < t:
        return Avoidance.CERTIFIED_AVOIDS
    if peak.lo > t:
        return Avoidance.NOT_APPLICABLE
    return Avoidance.UNKNOWN


def shortest_certified_sigma(mu: RationalLike, d: int = DEFAULT_DEPTH, peak: Enclosure | None = None, n_max: int | None = None) -> int | None:
    """Smallest ``n`` for which avoidance of sigma_n is certified, if any up to ``n_max``."""
    if peak is None:
        peak = CommuterEvaluator(as_rational(mu)).eval_at_peak(d)
    n_max = d + 2 if n_max is None else n_max
    for n in range(3, n_max + 1):
        if certify_avoidance(mu, n, d, peak) is Avoidance.CERTIFIED_AVOIDS:
            return n
    return None


def peak_deviation_bound(mu: Fraction) -> Fraction:
    return (1 - mu) / 2 + (1 - mu) ** 2


def peak_deviation_check(mu: RationalLike, d: int = DEFAULT_DEPTH) -> bool:
    """Whether the enclosure of ``h_mu(mu)`` sits within ``mu +- (B + 2^-d)``."""
    mu = as_rational(mu)
    if d < 1:
        raise ContractViolation("d must be >= 1")
    peak = CommuterEvaluator(mu).eval_at_peak(d)
    slack = peak_deviation_bound(mu) + Fraction(1, 2**d)
    return mu - slack <= peak.lo and peak.hi <= mu + slack


# -- exact thresholds -------------------------------------------------------


@dataclass(frozen=True)
class Probe:
    mu: Fraction
    allowed: bool
    witness: tuple[Fraction, Fraction] | None  # a realization interval when allowed


def probe_sigma(n: int, mu: Fraction) -> Probe:
    spans = realization_intervals(TentMap(mu), sigma(n))
    return Probe(mu, bool(spans), spans[0] if spans else None)


@dataclass
class ThresholdBracket:
    """``sigma_n`` is forbidden at ``lo`` and realized at ``hi``."""

    n: int
    lo: Fraction
    hi: Fraction
    tol: Fraction
    probes: list[Probe] = field(default_factory=list)
    rendered: str = ""
    stable: bool = True

    @property
    def hi_witness(self) -> tuple[Fraction, Fraction] | None:
        for p in self.probes:
            if p.mu == self.hi:
                return p.witness
        return None


def _check_monotone(probes: Sequence[Probe]) -> None:
    ordered = sorted(probes, key=lambda p: p.mu)
    seen_allowed = None
    for p in ordered:
        if seen_allowed is not None and not p.allowed:
            raise NonMonotoneThreshold(
                f"sigma realized at mu={seen_allowed.mu} but forbidden at larger mu={p.mu}"
            )
        if p.allowed and seen_allowed is None:
            seen_allowed = p


def mu_exact(n: int, tol: RationalLike = DEFAULT_TOL, digits: int = TABLE_DIGITS, coarse: int = 16) -> ThresholdBracket:
    """Bracket ``sup{mu : T_mu avoids sigma_n}`` to within ``tol``.

    A coarse dyadic scan fixes the initial bracket and checks that the
    predicate switches once; bisection then uses dyadic midpoints.  If the
    bracket would render ambiguously at ``digits`` decimals, ``tol`` is cut
    by 100 and the bisection continues.
    """
    if n < 3:
        raise ContractViolation(f"sigma_n needs n >= 3, got {n}")
    if n == 3:
        raise NoThreshold("sigma_3 = 231 is realized for every mu in (1/2, 1]")
    tol = as_rational(tol)
    if tol <= 0:
        raise ContractViolation("tol must be positive")

    probes = [probe_sigma(n, HALF + Fraction(k, 2 * coarse)) for k in range(1, coarse + 1)]
    _check_monotone(probes)
    if not probes[-1].allowed:
        raise AssertionError(f"sigma_{n} must be realized by the full tent map")
    if probes[0].allowed:
        raise NoThreshold(f"sigma_{n} is realized already at mu={probes[0].mu}")
    lo = max(p.mu for p in probes if not p.allowed)
    hi = min(p.mu for p in probes if p.allowed)

    tightenings = 0
    while True:
        while hi - lo > tol:
            p = probe_sigma(n, (lo + hi) / 2)
            probes.append(p)
            if p.allowed:
                hi = p.mu
            else:
                lo = p.mu
        r_lo, r_hi = round_half_even(lo, digits), round_half_even(hi, digits)
        near_edge = distance_to_rounding_boundary((lo + hi) / 2, digits) < tol
        if r_lo == r_hi and not near_edge:
            stable = True
            break
        if tightenings == MAX_TIGHTENINGS:
            stable = False
            break
        tol /= 100
        tightenings += 1
    _check_monotone(probes)
    return ThresholdBracket(n, lo, hi, tol, probes, round_half_even((lo + hi) / 2, digits), stable)


# -- table ------------------------------------------------------------------


@dataclass
class AvoidanceRow:
    n: int
    bracket: ThresholdBracket
    estimate: Enclosure | None

    @property
    def estimate_defined(self) -> bool:
        return self.estimate is not None

    @property
    def mu_exact_6dp(self) -> str:
        return self.bracket.rendered

    @property
    def mu_estimate_6dp(self) -> str:
        return render_estimate(self.n) if self.estimate is not None else ""

    def csv_fields(self) -> list[str]:
        return [
            str(self.n),
            str(self.bracket.lo),
            str(self.bracket.hi),
            self.mu_exact_6dp,
            self.mu_estimate_6dp,
            "true" if self.estimate_defined else "false",
        ]


TABLE1_COLUMNS = ["n", "mu_exact_lo", "mu_exact_hi", "mu_exact_6dp", "mu_estimate_6dp", "estimate_defined"]


def avoidance_row(n: int, tol: RationalLike = DEFAULT_TOL) -> AvoidanceRow:
    bracket = mu_exact(n, tol)
    try:
        estimate = mu_estimate(n)
    except EstimateUndefined:
        estimate = None
    return AvoidanceRow(n, bracket, estimate)


def table1(n_min: int = 4, n_max: int = 12, tol: RationalLike = DEFAULT_TOL) -> list[AvoidanceRow]:
    if not 4 <= n_min <= n_max:
        raise ContractViolation(f"need 4 <= n_min <= n_max, got {n_min}, {n_max}")
    return [avoidance_row(n, tol) for n in range(n_min, n_max + 1)]


def table1_mismatches(rows: Sequence[AvoidanceRow]) -> list[str]:
    """Differences between computed rows and the published six-decimal values."""
    problems = []
    for row in rows:
        if row.n not in TABLE1:
            continue
        exact, estimate = TABLE1[row.n]
        if row.mu_exact_6dp != exact:
            problems.append(f"n={row.n}: mu_exact {row.mu_exact_6dp} != {exact}")
        got_est = row.mu_estimate_6dp or None
        if got_est != estimate:
            problems.append(f"n={row.n}: mu_estimate {got_est} != {estimate}")
    return problems


# -- mu-forbidden patterns ----------------------------------------------------


class ForbiddenStatus(enum.Enum):
    MU_FORBIDDEN = "mu_forbidden"
    ALLOWED = "allowed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MuForbiddenReport:
    mu: Fraction
    pi: Permutation
    status: ForbiddenStatus
    witness: Fraction | None = None


def mu_forbidden_report(mu: RationalLike, pi: "Permutation | str") -> MuForbiddenReport:
    """Classify ``pi`` as allowed for ``T_mu`` (with a witness) or mu-forbidden.

    Patterns forbidden for the full tent map as well are reported as
    ``unknown``: they are not mu-forbidden in the defined sense.
    """
    mu = as_rational(mu)
    pi = coerce_permutation(pi)
    spans = realization_intervals(TentMap(mu), pi)
    if spans:
        lo, hi = spans[0]
        return MuForbiddenReport(mu, pi, ForbiddenStatus.ALLOWED, (lo + hi) / 2)
    if realization_intervals(FULL_TENT, pi):
        return MuForbiddenReport(mu, pi, ForbiddenStatus.MU_FORBIDDEN)
    return MuForbiddenReport(mu, pi, ForbiddenStatus.UNKNOWN)


# -- conjecture evidence ----------------------------------------------------


def conj3_bound(mu: Fraction) -> Fraction:
    return mu * mu + Fraction(5, 4) * (1 - mu)


@dataclass(frozen=True)
class EvidenceRow:
    mu: Fraction
    peak: Enclosure
    conj3_bound: Fraction
    step: str  # "up", "down", "unknown" against the previous row; "" for the first
    shortest_sigma_n: int | None

    @property
    def conj3_ok(self) -> bool:
        """Not certifiably above the bound."""
        return self.peak.lo <= self.conj3_bound

    def csv_fields(self) -> list[str]:
        return [
            str(self.mu),
            str(self.peak.lo),
            str(self.peak.hi),
            str(self.conj3_bound),
            "true" if self.conj3_ok else "false",
            "" if self.shortest_sigma_n is None else str(self.shortest_sigma_n),
        ]


EVIDENCE_COLUMNS = ["mu", "h_peak_lo", "h_peak_hi", "conj3_bound", "conj3_ok", "shortest_certified_sigma_n"]


def evidence_grid(grid: int) -> list[Fraction]:
    """``grid`` equally spaced heights in (1/2, 1], ending at 1."""
    return [HALF + Fraction(i, 2 * grid) for i in range(1, grid + 1)]


def conjecture_evidence(grid: int, d: int = DEFAULT_DEPTH) -> list[EvidenceRow]:
    if grid < 2 or d < 1:
        raise ContractViolation("grid must be >= 2 and depth >= 1")
    rows: list[EvidenceRow] = []
    prev: Enclosure | None = None
    for mu in evidence_grid(grid):
        peak = CommuterEvaluator(mu).eval_at_peak(d)
        if prev is None:
            step = ""
        elif prev.hi < peak.lo:
            step = "up"
        elif peak.hi < prev.lo:
            step = "down"
        else:
            step = "unknown"
        rows.append(EvidenceRow(mu, peak, conj3_bound(mu), step, shortest_certified_sigma(mu, d, peak)))
        prev = peak
    return rows


@dataclass(frozen=True)
class EvidenceSummary:
    certified_increases: int
    certified_decreases: list[Fraction]
    inconclusive_steps: int
    conj3_violations: list[Fraction]

    @property
    def clean(self) -> bool:
        return not self.certified_decreases and not self.conj3_violations


def summarize_evidence(rows: Sequence[EvidenceRow]) -> EvidenceSummary:
    return EvidenceSummary(
        sum(r.step == "up" for r in rows),
        [r.mu for r in rows if r.step == "down"],
        sum(r.step == "unknown" for r in rows),
        [r.mu for r in rows if not r.conj3_ok],
    )
