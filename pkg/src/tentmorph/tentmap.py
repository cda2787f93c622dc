"""Symmetric tent maps and the exact lap structure of their iterates."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .numerics import (
    HALF,
    ONE,
    ZERO,
    ContractViolation,
    RationalLike,
    as_rational,
    format_rational,
    parse_rational,
    unit_point,
)


@dataclass(frozen=True)
class TentMap:
    """``x -> 2 mu x`` on [0, 1/2] and ``2 mu (1 - x)`` on (1/2, 1].

    Heights ``mu <= 1/2`` are rejected: the dynamics there are degenerate
    (attracting fixed point, or a continuum of fixed points at 1/2).
    """

    mu: Fraction

    def __post_init__(self) -> None:
        mu = as_rational(self.mu)
        if not HALF < mu <= ONE:
            raise ContractViolation(f"tent map height must satisfy 1/2 < mu <= 1, got {mu}")
        object.__setattr__(self, "mu", mu)

    def __call__(self, x: Fraction) -> Fraction:
        return tent_eval(self, x)

    def orbit(self, x: Fraction, n: int) -> list[Fraction]:
        """The first ``n`` points ``x, T(x), ..., T^{n-1}(x)``."""
        out = []
        for _ in range(n):
            out.append(x)
            x = tent_eval(self, x)
        return out

    def power(self, x: Fraction, n: int) -> Fraction:
        for _ in range(n):
            x = tent_eval(self, x)
        return x

    def iterate(self, n: int) -> "PiecewiseLinearMap":
        return iterate(self, n)


FULL_TENT = TentMap(ONE)


def tent_eval(tent: TentMap, x: RationalLike) -> Fraction:
    x = unit_point(x)
    if x <= HALF:
        return 2 * tent.mu * x
    return 2 * tent.mu * (1 - x)


@dataclass(frozen=True)
class Lap:
    lo: Fraction
    hi: Fraction
    slope: Fraction
    intercept: Fraction

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """Continuous piecewise-affine self-map of [0, 1].

    Lap ``i`` covers ``[breakpoints[i], breakpoints[i+1])``; the last lap
    is closed on the right.
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    intercepts: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bp = self.breakpoints
        if len(bp) < 2 or bp[0] != ZERO or bp[-1] != ONE:
            raise ContractViolation("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ContractViolation("breakpoints must be strictly increasing")
        if not len(self.slopes) == len(self.intercepts) == len(bp) - 1:
            raise ContractViolation("need exactly one affine piece per lap")

    def __len__(self) -> int:
        return len(self.slopes)

    def lap_index(self, x: Fraction) -> int:
        return min(bisect.bisect_right(self.breakpoints, x) - 1, len(self.slopes) - 1)

    def __call__(self, x: RationalLike) -> Fraction:
        x = unit_point(x)
        i = self.lap_index(x)
        return self.slopes[i] * x + self.intercepts[i]

    def laps(self) -> Iterator[Lap]:
        bp = self.breakpoints
        for i, (s, c) in enumerate(zip(self.slopes, self.intercepts)):
            yield Lap(bp[i], bp[i + 1], s, c)

    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        """Polyline vertices ``(x, y)`` at every breakpoint."""
        ys = [s * x + c for x, s, c in zip(self.breakpoints, self.slopes, self.intercepts)]
        ys.append(self.slopes[-1] * ONE + self.intercepts[-1])
        return list(zip(self.breakpoints, ys))

    def to_json(self) -> dict:
        return {
            "breakpoints": [format_rational(q) for q in self.breakpoints],
            "slopes": [format_rational(q) for q in self.slopes],
            "intercepts": [format_rational(q) for q in self.intercepts],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PiecewiseLinearMap":
        return cls(
            tuple(parse_rational(s) for s in data["breakpoints"]),
            tuple(parse_rational(s) for s in data["slopes"]),
            tuple(parse_rational(s) for s in data["intercepts"]),
        )


def _compose_tent(tent: TentMap, laps: Sequence[Lap]) -> list[Lap]:
    """Laps of ``T_mu o P`` given the laps of ``P``.

    Each lap is split where ``P`` crosses 1/2, so that ``T_mu`` acts by a
    single affine branch on every new lap.
    """
    two_mu = 2 * tent.mu
    out: list[Lap] = []
    for lap in laps:
        pieces = [(lap.lo, lap.hi)]
        v_lo, v_hi = lap(lap.lo), lap(lap.hi)
        if min(v_lo, v_hi) < HALF < max(v_lo, v_hi):
            cut = (HALF - lap.intercept) / lap.slope
            pieces = [(lap.lo, cut), (cut, lap.hi)]
        for lo, hi in pieces:
            if lap((lo + hi) / 2) <= HALF:
                out.append(Lap(lo, hi, two_mu * lap.slope, two_mu * lap.intercept))
            else:
                out.append(Lap(lo, hi, -two_mu * lap.slope, two_mu * (1 - lap.intercept)))
    return out


def iterate_laps(tent: TentMap, n: int) -> list[Lap]:
    if n < 0:
        raise ContractViolation(f"iterate count must be non-negative, got {n}")
    laps = [Lap(ZERO, ONE, ONE, ZERO)]
    for _ in range(n):
        laps = _compose_tent(tent, laps)
    return laps


def iterate(tent: TentMap, n: int) -> PiecewiseLinearMap:
    """Exact lap decomposition of the ``n``-th iterate; ``n = 0`` is the identity."""
    laps = iterate_laps(tent, n)
    return PiecewiseLinearMap(
        tuple(l.lo for l in laps) + (ONE,),
        tuple(l.slope for l in laps),
        tuple(l.intercept for l in laps),
    )


def _branch_preimages(tent: TentMap, y: Fraction) -> list[Fraction]:
    two_mu = 2 * tent.mu
    out = []
    left = y / two_mu
    if left <= HALF:
        out.append(left)
    right = 1 - y / two_mu
    if right > HALF:
        out.append(right)
    return out


def preimages_of_half(tent: TentMap, depth: int) -> list[Fraction]:
    """Sorted points ``x`` with ``T^j(x) = 1/2`` for some ``0 <= j <= depth``."""
    if depth < 0:
        raise ContractViolation(f"depth must be non-negative, got {depth}")
    found = {HALF}
    frontier = {HALF}
    for _ in range(depth):
        frontier = {x for y in frontier for x in _branch_preimages(tent, y)} - found
        found |= frontier
        if not frontier:
            break
    return sorted(found)


def preimage_bound(delta: Fraction, mu: Fraction) -> int:
    """Iteration count by which ``(x, x + delta)`` must have covered 1/2."""
    if 2 * delta >= 1:
        return 0
    if mu == HALF:
        raise ContractViolation("no stretching at mu = 1/2")
    return math.ceil(-math.log(2 * delta) / math.log(2 * mu))


def find_interior_preimage(tent: TentMap, x: RationalLike, y: RationalLike) -> tuple[Fraction, int]:
    """Smallest ``n`` and the point ``x0`` in ``(x, y)`` with ``T^n(x0) = 1/2``.

    ``T^k`` stays monotone on ``(x, y)`` until the image first contains
    1/2 in its interior, so the point found at that level is unique.
    """
    x, y = unit_point(x), unit_point(y)
    if not x < y:
        raise ContractViolation(f"need x < y, got {x}, {y}")
    slope, intercept = ONE, ZERO
    lo, hi = x, y
    limit = preimage_bound(y - x, tent.mu) + 2
    two_mu = 2 * tent.mu
    for n in range(limit + 1):
        if lo < HALF < hi:
            return (HALF - intercept) / slope, n
        # image (lo, hi) now lies in one closed half, so T acts affinely on it
        if hi <= HALF:
            slope, intercept = two_mu * slope, two_mu * intercept
            lo, hi = two_mu * lo, two_mu * hi
        else:
            slope, intercept = -two_mu * slope, two_mu * (1 - intercept)
            lo, hi = two_mu * (1 - hi), two_mu * (1 - lo)
    raise AssertionError(f"no preimage of 1/2 found in ({x}, {y}) within {limit} steps")
