"""Property suites behind ``tentmorph verify``.

Each suite is a list of named zero-argument checks; they use a fixed seed
so a run is reproducible.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Iterator

from .bounds import (
    TABLE1,
    Avoidance,
    certify_avoidance,
    conjecture_evidence,
    mu_estimate,
    mu_estimate_quadratic,
    mu_exact,
    peak_deviation_check,
    render_estimate,
    summarize_evidence,
)
from .commuter import CommuterEvaluator, gap_exclusion_violations
from .numerics import Enclosure, Order, enclosure_widen, strictly_below
from .patterns import (
    enumerate_allowed,
    is_allowed,
    pat,
    sigma,
    sigma_realization_interval,
)
from .tentmap import (
    FULL_TENT,
    TentMap,
    find_interior_preimage,
    iterate,
    preimage_bound,
    preimages_of_half,
)

Check = tuple[str, Callable[[], bool]]
SEED = 20240601


def random_unit(rng: random.Random, max_den: int = 10**6) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


def random_mu(rng: random.Random, max_den: int = 10**4) -> Fraction:
    q = rng.randint(3, max_den)
    return Fraction(rng.randint(q // 2 + 1, q), q)


def numerics_suite() -> list[Check]:
    rng = random.Random(SEED)

    def canonical() -> bool:
        for _ in range(200):
            a = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9))
            b = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9))
            for r in (a + b, a - b, a * b):
                if r.denominator <= 0 or math.gcd(r.numerator, r.denominator) != 1:
                    return False
            if (a + b) - b != a:
                return False
        return True

    def containment() -> bool:
        for _ in range(200):
            lo = random_unit(rng)
            e = Enclosure(lo, lo + random_unit(rng))
            f = Enclosure(-lo, random_unit(rng))
            for _ in range(5):
                p = e.lo + (e.hi - e.lo) * random_unit(rng)
                s = f.lo + (f.hi - f.lo) * random_unit(rng)
                if p + s not in e + f or p * s not in e * f or p - s not in e - f:
                    return False
        return True

    return [
        ("rational canonical form and exact cancellation", canonical),
        ("enclosure arithmetic contains point images", containment),
        ("widen [1/2,1/2] by 1/4 is [1/4,3/4]",
         lambda: enclosure_widen(Enclosure.point(Fraction(1, 2)), Fraction(1, 4)) == Enclosure(Fraction(1, 4), Fraction(3, 4))),
        ("strictly_below tri-state",
         lambda: strictly_below(Enclosure(0, Fraction(1, 4)), Enclosure(Fraction(1, 2), Fraction(3, 4))) is Order.YES
         and strictly_below(Enclosure(0, Fraction(1, 2)), Enclosure(Fraction(1, 4), Fraction(3, 4))) is Order.UNKNOWN),
    ]


def tentmap_suite() -> list[Check]:
    rng = random.Random(SEED + 1)
    heights = [Fraction(1), Fraction(3, 4), Fraction(4, 5), Fraction(3, 5)]

    def iterate_matches_composition() -> bool:
        for mu in heights:
            tent = TentMap(mu)
            for n in range(6):
                pl = iterate(tent, n)
                for _ in range(30):
                    x = random_unit(rng)
                    if pl(x) != tent.power(x, n):
                        return False
        return True

    def breakpoints_are_preimages() -> bool:
        for mu in heights:
            tent = TentMap(mu)
            for n in range(1, 7):
                want = set(preimages_of_half(tent, n - 1)) | {Fraction(0), Fraction(1)}
                if set(iterate(tent, n).breakpoints) != want:
                    return False
        return True

    def full_tent_laps() -> bool:
        for n in range(9):
            pl = iterate(FULL_TENT, n)
            if len(pl) != 2**n or any(abs(s) != 2**n for s in pl.slopes):
                return False
        return True

    def preimage_bound_respected() -> bool:
        for mu in heights:
            tent = TentMap(mu)
            for _ in range(50):
                x, y = sorted((random_unit(rng), random_unit(rng)))
                if x == y:
                    continue
                x0, n = find_interior_preimage(tent, x, y)
                if not (x < x0 < y and tent.power(x0, n) == Fraction(1, 2)):
                    return False
                if n > preimage_bound(y - x, mu):
                    return False
        return True

    return [
        ("iterate equals n-fold composition", iterate_matches_composition),
        ("breakpoints equal preimages of 1/2", breakpoints_are_preimages),
        ("full tent: 2^n laps with slopes +-2^n", full_tent_laps),
        ("interior preimage within the stretching bound", preimage_bound_respected),
    ]


def patterns_suite() -> list[Check]:
    rng = random.Random(SEED + 2)
    t34 = TentMap(Fraction(3, 4))

    def inclusion() -> bool:
        for mu in (Fraction(3, 5), Fraction(3, 4), Fraction(9, 10)):
            for n in range(1, 7):
                if not enumerate_allowed(TentMap(mu), n) <= enumerate_allowed(FULL_TENT, n):
                    return False
        return True

    def restriction_closure() -> bool:
        for mu in (Fraction(1), Fraction(3, 4), Fraction(4, 5)):
            tent = TentMap(mu)
            for n in range(2, 7):
                shorter = enumerate_allowed(tent, n - 1)
                if any(p.restrict(n - 1) not in shorter for p in enumerate_allowed(tent, n)):
                    return False
        return True

    def sigma_localized() -> bool:
        for n in range(3, 9):
            lo, hi = sigma_realization_interval(n)
            if pat((lo + hi) / 2, FULL_TENT, n) != sigma(n):
                return False
            for _ in range(100):
                y = random_unit(rng)
                if lo <= y <= hi:
                    continue
                try:
                    if pat(y, FULL_TENT, n) == sigma(n):
                        return False
                except ValueError:
                    continue
        return True

    def single_pattern_route_agrees() -> bool:
        from .patterns import all_patterns

        for mu in (Fraction(1), Fraction(3, 4)):
            tent = TentMap(mu)
            for n in range(1, 6):
                allowed = enumerate_allowed(tent, n)
                if any(is_allowed(tent, p) != (p in allowed) for p in all_patterns(n)):
                    return False
        return True

    return [
        ("Pat(23/100, T, 5) = 24513", lambda: str(pat(Fraction(23, 100), FULL_TENT, 5)) == "24513"),
        ("321 forbidden for T", lambda: not is_allowed(FULL_TENT, "321")),
        ("2341, 3412, 3124 allowed for T and forbidden for T_3/4",
         lambda: all(is_allowed(FULL_TENT, p) and not is_allowed(t34, p) for p in ("2341", "3412", "3124"))),
        ("Allow(T_mu) within Allow(T) for n <= 6", inclusion),
        ("restriction closure", restriction_closure),
        ("sigma_n realized exactly on its interval", sigma_localized),
        ("is_allowed agrees with enumeration", single_pattern_route_agrees),
    ]


def commuter_suite() -> list[Check]:
    rng = random.Random(SEED + 3)
    heights = [Fraction(3, 5), Fraction(3, 4), Fraction(9, 10), Fraction(1)]

    def residual_zero() -> bool:
        for _ in range(300):
            ev = CommuterEvaluator(random_mu(rng))
            if ev.commutation_residual(random_unit(rng), rng.randint(1, 30)) != 0:
                return False
        return True

    def pinned_and_branch_preserving() -> bool:
        for mu in heights:
            ev = CommuterEvaluator(mu)
            for d in range(1, 25):
                if ev.eval_depth(0, d) != 0 or ev.eval_depth(1, d) != 1:
                    return False
            for _ in range(50):
                x = random_unit(rng)
                v = ev.eval_depth(x, 20)
                if (x <= Fraction(1, 2)) != (v <= Fraction(1, 2)) and v != Fraction(1, 2):
                    return False
        return True

    def strictly_increasing() -> bool:
        for mu in heights:
            ev = CommuterEvaluator(mu)
            for _ in range(100):
                x, y = sorted((random_unit(rng), random_unit(rng)))
                if x < y and not ev.eval_depth(x, 25) < ev.eval_depth(y, 25):
                    return False
        return True

    def cauchy_rate() -> bool:
        for mu in heights:
            ev = CommuterEvaluator(mu)
            for _ in range(50):
                x = random_unit(rng)
                d = rng.randint(0, 30)
                if abs(ev.eval_depth(x, d) - ev.eval_depth(x, d + 1)) > Fraction(1, 2**d):
                    return False
        return True

    def half_value_identity() -> bool:
        for mu in heights:
            ev = CommuterEvaluator(mu)
            for d in range(1, 30):
                if ev.eval_depth(Fraction(1, 2), d) != ev.eval_depth(mu, d - 1) / 2:
                    return False
        return True

    def gap_exclusion() -> bool:
        ev = CommuterEvaluator(Fraction(3, 4))
        gaps = ev.range_gaps(4, 40)
        xs = [Fraction(i, 2000) for i in range(2001)]
        return not gap_exclusion_violations(ev, gaps, xs, 40)

    def uniform_bound() -> bool:
        for mu in heights:
            ev = CommuterEvaluator(mu)
            if ev.uniform_distance_to_identity(200, 30) > (1 - mu) + Fraction(1, 2**30):
                return False
        return True

    return [
        ("commutation_residual == 0", residual_zero),
        ("f_d(0) = 0, f_d(1) = 1 and branches preserved", pinned_and_branch_preserving),
        ("f_d strictly increasing", strictly_increasing),
        ("Cauchy rate 2^-d", cauchy_rate),
        ("f_d(1/2) = f_{d-1}(mu)/2", half_value_identity),
        ("h_mu(mu) < 1 for mu < 1",
         lambda: all(CommuterEvaluator(mu).eval_at_peak(40).hi < 1 for mu in heights[:3])),
        ("no sample inside a certified gap", gap_exclusion),
        ("uniform distance to identity <= 1 - mu", uniform_bound),
    ]


def bounds_suite() -> list[Check]:
    rng = random.Random(SEED + 4)

    def estimates_match_table() -> bool:
        return all(render_estimate(n) == e for n, (_, e) in TABLE1.items() if e is not None)

    def estimate_routes_agree() -> bool:
        for n in range(6, 13):
            a, b = mu_estimate(n), mu_estimate_quadratic(n)
            if a.hi < b.lo or b.hi < a.lo:
                return False
        return True

    def thresholds_match_table() -> bool:
        return all(mu_exact(n).rendered == a for n, (a, _) in TABLE1.items())

    def estimate_below_threshold() -> bool:
        return all(mu_estimate(n).hi < mu_exact(n).lo for n in range(6, 13))

    def certification_consistent() -> bool:
        for n in range(6, 10):
            hi = mu_exact(n).hi
            for _ in range(10):
                mu = random_mu(rng)
                if certify_avoidance(mu, n, 40) is Avoidance.CERTIFIED_AVOIDS and not mu < hi:
                    return False
        return True

    def evidence_clean() -> bool:
        return summarize_evidence(conjecture_evidence(50, 40)).clean

    return [
        ("closed-form estimates match the published table", estimates_match_table),
        ("closed form agrees with quadratic root", estimate_routes_agree),
        ("exact thresholds match the published table", thresholds_match_table),
        ("estimate strictly below exact threshold", estimate_below_threshold),
        ("certified avoidance consistent with thresholds", certification_consistent),
        ("peak deviation bound holds", lambda: all(peak_deviation_check(random_mu(rng), 40) for _ in range(20))),
        ("conjecture evidence has no certified violation", evidence_clean),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "numerics": numerics_suite,
    "tentmap": tentmap_suite,
    "patterns": patterns_suite,
    "commuter": commuter_suite,
    "bounds": bounds_suite,
}


def run_suites(name: str) -> Iterator[tuple[str, str, bool]]:
    """Yield ``(suite, check, passed)``; an exception counts as a failure."""
    names = list(SUITES) if name == "all" else [name]
    for suite in names:
        for label, check in SUITES[suite]():
            try:
                ok = bool(check())
            except Exception:  # a crashing check is a failed check
                ok = False
            yield suite, label, ok
