"""The commuter ``h_mu`` with ``T o h_mu = h_mu o T_mu``.

``h_mu`` is the fixed point of the operator

    M f(x) = f(2 mu x) / 2              for x on the left branch
    M f(x) = 1 - f(2 mu (1 - x)) / 2    for x on the right branch

which contracts the sup norm by 1/2.  Starting from the identity, the
``d``-th iterate ``f_d`` is within ``2**-d`` of ``h_mu`` everywhere, and
every ``f_d`` is strictly increasing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .numerics import (
    HALF,
    ONE,
    ZERO,
    ContractViolation,
    Enclosure,
    RationalLike,
    as_rational,
    cap_enclosure,
    unit_point,
)
from .tentmap import FULL_TENT, TentMap

CONTRACTION = HALF
DEFAULT_DEPTH = 40


class Convention(enum.Enum):
    """Which branch owns x = 1/2."""

    HALF_IN_LEFT = "half_in_left"
    HALF_IN_RIGHT = "half_in_right"


class NotAPreimage(ValueError):
    pass


@dataclass(frozen=True)
class GapInterval:
    """Interval around ``center`` that the range of ``h_mu`` avoids.

    The true half-width lies in ``[radius_lo, radius_hi]``; only the
    ``radius_lo`` gap is certified.
    """

    level: int
    index: int
    center: Fraction
    radius_lo: Fraction
    radius_hi: Fraction

    @property
    def certified(self) -> tuple[Fraction, Fraction]:
        return self.center - self.radius_lo, self.center + self.radius_lo


@dataclass(frozen=True)
class JumpProbe:
    x0: Fraction
    level: int
    value: Fraction
    threshold: Fraction

    @property
    def certified(self) -> bool:
        return self.value > self.threshold


@dataclass(frozen=True)
class CommuterEvaluator:
    mu: Fraction
    convention: Convention = Convention.HALF_IN_LEFT
    default_depth: int = DEFAULT_DEPTH
    max_denominator: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", TentMap(as_rational(self.mu)).mu)
        if self.default_depth < 0:
            raise ContractViolation("default depth must be non-negative")

    @property
    def tent(self) -> TentMap:
        return TentMap(self.mu)

    @property
    def _left_closed(self) -> bool:
        return self.convention is Convention.HALF_IN_LEFT

    def eval_depth(self, x: RationalLike, d: int | None = None) -> Fraction:
        """Exact ``f_d(x)``."""
        d = self.default_depth if d is None else d
        if d < 0:
            raise ContractViolation(f"depth must be non-negative, got {d}")
        x = unit_point(x)
        num, den = kernels.commuter_value(
            x.numerator, x.denominator, self.mu.numerator, self.mu.denominator, d, self._left_closed
        )
        return Fraction(num, den)

    def eval_many(self, xs: Sequence[Fraction], d: int | None = None) -> list[Fraction]:
        """``f_d`` on many points; points sharing a denominator go through one sweep."""
        d = self.default_depth if d is None else d
        groups: dict[int, list[int]] = {}
        for i, x in enumerate(xs):
            groups.setdefault(x.denominator, []).append(i)
        out: list[Fraction] = [ZERO] * len(xs)
        a, b = self.mu.numerator, self.mu.denominator
        for q, idx in groups.items():
            nums = kernels.commuter_sweep([xs[i].numerator for i in idx], q, a, b, d, self._left_closed)
            den = (q * b**d) << d
            for i, num in zip(idx, nums):
                out[i] = Fraction(num, den)
        return out

    def eval(self, x: RationalLike, d: int | None = None) -> Enclosure:
        """Enclosure of ``h_mu(x)``: ``f_d(x) +- 2**-d`` clipped to [0, 1]."""
        d = self.default_depth if d is None else d
        if d < 1:
            raise ContractViolation(f"enclosure depth must be >= 1, got {d}")
        centre = self.eval_depth(x, d)
        r = Fraction(1, 2**d)
        out = Enclosure(centre - r, centre + r).clamp_unit()
        if self.max_denominator is not None:
            out = cap_enclosure(out, self.max_denominator).clamp_unit()
        return out

    def eval_at_peak(self, d: int | None = None) -> Enclosure:
        """Enclosure of ``h_mu(mu)``, the value that sizes every range gap."""
        return self.eval(self.mu, d)

    def commutation_residual(self, x: RationalLike, d: int) -> Fraction:
        """``|T(f_d(x)) - f_{d-1}(T_mu(x))|``; exactly zero for every x and d >= 1."""
        if d < 1:
            raise ContractViolation("residual needs d >= 1")
        x = unit_point(x)
        return abs(FULL_TENT(self.eval_depth(x, d)) - self.eval_depth(self.tent(x), d - 1))

    def jump_at(self, x0: RationalLike, d: int | None = None, epsilon: RationalLike | None = None) -> JumpProbe:
        """Probe the increase of ``f_d`` across ``x0 +- epsilon``.

        ``x0`` must be a preimage of 1/2 within ``d`` steps.  The probe
        counts as certified when the increase exceeds twice the enclosure
        width plus ``2 epsilon``, the increase of the identity over the
        same window.
        """
        d = self.default_depth if d is None else d
        x0 = unit_point(x0)
        level = preimage_level(self.tent, x0, d)
        if level is None:
            raise NotAPreimage(f"T_mu^n({x0}) != 1/2 for every n <= {d}")
        eps = Fraction(1, 2 ** (d // 2)) if epsilon is None else as_rational(epsilon)
        if eps <= 0:
            raise ContractViolation("epsilon must be positive")
        right = min(x0 + eps, ONE)
        left = max(x0 - eps, ZERO)
        value = self.eval_depth(right, d) - self.eval_depth(left, d)
        threshold = 2 * Fraction(2, 2**d) + (right - left)
        return JumpProbe(x0, level, value, threshold)

    def range_gaps(self, levels: int, d: int | None = None) -> list[GapInterval]:
        """Certified gaps in the range, centred at the odd dyadics of each level.

        Levels where the certified radius is zero (always the case for
        mu = 1) contribute nothing.
        """
        d = self.default_depth if d is None else d
        if levels < 1 or d < 1:
            raise ContractViolation("levels and depth must be >= 1")
        peak = self.eval_at_peak(d)
        gaps = []
        for n in range(1, levels + 1):
            scale = Fraction(1, 2**n)
            r_lo = (1 - peak.hi) * scale
            r_hi = (1 - peak.lo) * scale
            if r_lo <= 0:
                continue
            for i in range(1, 2 ** (n - 1) + 1):
                gaps.append(GapInterval(n, i, (2 * i - 1) * scale, r_lo, r_hi))
        return gaps

    def uniform_distance_to_identity(self, grid: int, d: int | None = None) -> Fraction:
        """Max of ``|f_d(x) - x|`` over ``x = i/(grid-1)``."""
        d = self.default_depth if d is None else d
        if grid < 2 or d < 1:
            raise ContractViolation("grid must be >= 2 and depth >= 1")
        xs = [Fraction(i, grid - 1) for i in range(grid)]
        return max(abs(v - x) for v, x in zip(self.eval_many(xs, d), xs))


def preimage_level(tent: TentMap, x0: Fraction, depth: int) -> int | None:
    """Smallest ``n <= depth`` with ``T^n(x0) = 1/2``, if any."""
    x = x0
    for n in range(depth + 1):
        if x == HALF:
            return n
        x = tent(x)
    return None


def gap_exclusion_violations(
    ev: CommuterEvaluator, gaps: Sequence[GapInterval], xs: Sequence[Fraction], d: int
) -> list[tuple[Fraction, Fraction, GapInterval]]:
    """Points whose ``f_d`` value falls inside a certified gap shrunk by ``2**-d``."""
    slack = Fraction(1, 2**d)
    bad = []
    for x, v in zip(xs, ev.eval_many(xs, d)):
        for g in gaps:
            lo, hi = g.certified
            if lo + slack < v < hi - slack:
                bad.append((x, v, g))
    return bad
