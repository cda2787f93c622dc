"""Exact rationals and certified interval enclosures.

Every quantity in the package is a :class:`fractions.Fraction`; nothing is
ever rounded unless a caller explicitly asks for an outward-rounded
:class:`Enclosure` or a decimal rendering.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class ContractViolation(ValueError):
    """A documented precondition of an operation was not met."""


def parse_rational(text: str) -> Fraction:
    """Parse the ``"p/q"`` or ``"p"`` text form.

    Decimal and exponent notation are rejected on purpose: inputs that
    name a point or a height must be exact.
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}; expected 'p/q' or 'p'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def unit_point(value: RationalLike) -> Fraction:
    """Return ``value`` as a rational, checking ``0 <= value <= 1``."""
    x = as_rational(value)
    if not 0 <= x <= 1:
        raise ContractViolation(f"{x} is outside [0, 1]")
    return x


def round_half_even(q: Fraction, digits: int) -> str:
    """Render ``q`` with exactly ``digits`` decimals, ties to even."""
    scale = 10**digits
    scaled = round(q * scale)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def floor_decimal(q: Fraction, digits: int) -> str:
    """Largest ``digits``-decimal number <= q (outward rounding for lower ends)."""
    scale = 10**digits
    return _render_scaled(math.floor(q * scale), digits)


def ceil_decimal(q: Fraction, digits: int) -> str:
    """Smallest ``digits``-decimal number >= q (outward rounding for upper ends)."""
    scale = 10**digits
    return _render_scaled(math.ceil(q * scale), digits)


def _render_scaled(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def distance_to_rounding_boundary(q: Fraction, digits: int) -> Fraction:
    """Distance from ``q`` to the nearest half-unit in the last kept digit.

    A rendering is unstable under perturbations smaller than this.
    """
    scale = 10**digits
    t = q * scale - Fraction(1, 2)
    return abs(t - round(t)) / scale


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` certified to contain some real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.lo, Fraction):
            object.__setattr__(self, "lo", as_rational(self.lo))
        if not isinstance(self.hi, Fraction):
            object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ContractViolation(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: RationalLike) -> "Enclosure":
        q = as_rational(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, q: object) -> bool:
        if isinstance(q, Enclosure):
            return self.lo <= q.lo and q.hi <= self.hi
        return self.lo <= q <= self.hi  # type: ignore[operator]

    def __add__(self, other: "Enclosure | RationalLike") -> "Enclosure":
        o = _enc(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: "Enclosure | RationalLike") -> "Enclosure":
        return self + (-_enc(other))

    def __rsub__(self, other: RationalLike) -> "Enclosure":
        return _enc(other) - self

    def __mul__(self, other: "Enclosure | RationalLike") -> "Enclosure":
        o = _enc(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def square(self) -> "Enclosure":
        lo, hi = self.lo, self.hi
        if lo >= 0:
            return Enclosure(lo * lo, hi * hi)
        if hi <= 0:
            return Enclosure(hi * hi, lo * lo)
        return Enclosure(ZERO, max(lo * lo, hi * hi))

    def clamp_unit(self) -> "Enclosure":
        """Intersect with [0, 1]; valid when the enclosed value is known to lie there."""
        lo = min(max(self.lo, ZERO), ONE)
        hi = max(min(self.hi, ONE), ZERO)
        return Enclosure(lo, hi)

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "Enclosure":
        return cls(parse_rational(data["lo"]), parse_rational(data["hi"]))

    def __repr__(self) -> str:
        return f"Enclosure({self.lo}, {self.hi})"


def _enc(value: "Enclosure | RationalLike") -> Enclosure:
    if isinstance(value, Enclosure):
        return value
    return Enclosure.point(value)


def enclosure_widen(e: Enclosure, r: RationalLike, unit: bool = False) -> Enclosure:
    """Return ``[e.lo - r, e.hi + r]``, clamped to [0, 1] when ``unit`` is set."""
    r = as_rational(r)
    if r < 0:
        raise ContractViolation(f"widening radius must be non-negative, got {r}")
    out = Enclosure(e.lo - r, e.hi + r)
    return out.clamp_unit() if unit else out


class Order(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def strictly_below(a: Enclosure, b: Enclosure) -> Order:
    """Certified test of ``a < b`` for the values enclosed by ``a`` and ``b``."""
    if a.hi < b.lo:
        return Order.YES
    if b.hi < a.lo:
        return Order.NO
    return Order.UNKNOWN


def cap_denominator(q: Fraction, max_den: int) -> Enclosure:
    """Outward-round ``q`` to an enclosure whose ends have denominator ``max_den``.

    Returns a point enclosure when ``q`` already has a small enough denominator.
    """
    if max_den < 1:
        raise ContractViolation("max_den must be positive")
    if q.denominator <= max_den:
        return Enclosure.point(q)
    scaled = q * max_den
    return Enclosure(
        Fraction(math.floor(scaled), max_den), Fraction(math.ceil(scaled), max_den)
    )


def cap_enclosure(e: Enclosure, max_den: int) -> Enclosure:
    return Enclosure(cap_denominator(e.lo, max_den).lo, cap_denominator(e.hi, max_den).hi)


def sqrt_enclosure(q: RationalLike, width: RationalLike) -> Enclosure:
    """Enclose the square root of a non-negative rational to the given width.

    ``sqrt(p/s) = sqrt(p*s)/s``; the integer square root brackets
    ``sqrt(p*s*k*k)`` between consecutive integers.
    """
    q = as_rational(q)
    width = as_rational(width)
    if q < 0:
        raise ContractViolation(f"square root of negative {q}")
    if width <= 0:
        raise ContractViolation("width must be positive")
    p, s = q.numerator, q.denominator
    k = math.ceil(1 / (width * s)) if width * s < 1 else 1
    root = math.isqrt(p * s * k * k)
    lo = Fraction(root, s * k)
    hi = lo if root * root == p * s * k * k else Fraction(root + 1, s * k)
    return Enclosure(lo, hi)
