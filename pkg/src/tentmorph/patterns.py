"""Ordinal patterns of tent-map orbits, computed with exact comparisons.

Two routes produce allowed patterns:

* :func:`enumerate_allowed` walks the common lap partition of
  ``T^0 .. T^{n-1}``, cuts every lap at the pairwise crossings of the
  affine orbit coordinates and reads one pattern per piece.
* :func:`realization_intervals` grows a single pattern one entry at a
  time, keeping only the open intervals on which the prefix is realized.
  :func:`is_allowed` and the threshold search use this pruned route.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels
from .numerics import (
    HALF,
    ONE,
    ZERO,
    ContractViolation,
    Enclosure,
    Order,
    RationalLike,
    as_rational,
    strictly_below,
    unit_point,
)
from .tentmap import FULL_TENT, TentMap

DEFAULT_MAX_N = 10

Affine = tuple[Fraction, Fraction]  # (slope, intercept)


class TieError(ValueError):
    """Two orbit points coincide, so no ordinal pattern is defined."""

    def __init__(self, indices: tuple[int, int], x: Fraction | None = None):
        self.indices = indices
        self.x = x
        i, j = indices
        where = f" of {x}" if x is not None else ""
        super().__init__(f"orbit points {i} and {j}{where} coincide")


@dataclass(frozen=True, order=True)
class Permutation:
    """A pattern in one-line notation, entries ``1..n``."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if not entries or sorted(entries) != list(range(1, len(entries) + 1)):
            raise ContractViolation(f"{entries} is not a permutation of 1..n")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __str__(self) -> str:
        if len(self.entries) <= 9:
            return "".join(map(str, self.entries))
        return ",".join(map(str, self.entries))

    def __repr__(self) -> str:
        return f"Permutation({self})"

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"malformed permutation {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_values(cls, values: Sequence) -> "Permutation":
        """Pattern of pairwise distinct values; raises :class:`TieError` on a tie."""
        order = sorted(range(len(values)), key=values.__getitem__)
        ranks = [0] * len(values)
        for rank, idx in enumerate(order):
            ranks[idx] = rank + 1
        for a, b in zip(order, order[1:]):
            if values[a] == values[b]:
                raise TieError((min(a, b), max(a, b)))
        return cls(tuple(ranks))

    def restrict(self, k: int) -> "Permutation":
        """Standardized pattern of the first ``k`` entries."""
        return Permutation.from_values(self.entries[:k])


def coerce_permutation(pi: "Permutation | str | Sequence[int]") -> Permutation:
    if isinstance(pi, Permutation):
        return pi
    if isinstance(pi, str):
        return Permutation.parse(pi)
    return Permutation(tuple(pi))


@dataclass(frozen=True)
class PatternSet:
    n: int
    members: frozenset[Permutation]

    def __post_init__(self) -> None:
        members = frozenset(self.members)
        for p in members:
            if len(p) != self.n:
                raise ContractViolation(f"{p} does not have length {self.n}")
        object.__setattr__(self, "members", members)

    def __contains__(self, pi: object) -> bool:
        if isinstance(pi, (str, tuple, list)):
            pi = coerce_permutation(pi)
        return pi in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.members))

    def __le__(self, other: "PatternSet") -> bool:
        return self.n == other.n and self.members <= other.members

    def __lt__(self, other: "PatternSet") -> bool:
        return self.n == other.n and self.members < other.members

    def strings(self) -> list[str]:
        return [str(p) for p in self]

    def to_json(self) -> dict:
        return {"n": self.n, "patterns": self.strings()}

    @classmethod
    def from_json(cls, data: dict) -> "PatternSet":
        return cls(data["n"], frozenset(Permutation.parse(s) for s in data["patterns"]))


def pat(x: RationalLike, tent: TentMap, n: int) -> Permutation:
    """Ordinal pattern of the first ``n`` orbit points of ``x``."""
    if n < 1:
        raise ContractViolation(f"pattern length must be >= 1, got {n}")
    x = unit_point(x)
    mu = tent.mu
    values = kernels.orbit_numerators(x.numerator, x.denominator, mu.numerator, mu.denominator, n)
    try:
        return Permutation.from_values(values)
    except TieError as err:
        raise TieError(err.indices, x) from None


def sigma(n: int) -> Permutation:
    """``(n-1) n 1 2 ... (n-2)``: the pattern of the full tent map near 1/2."""
    if n < 3:
        raise ContractViolation(f"sigma_n needs n >= 3, got {n}")
    return Permutation((n - 1, n) + tuple(range(1, n - 1)))


def sigma_realization_interval(n: int) -> tuple[Fraction, Fraction]:
    """Open interval on which the full tent map realizes ``sigma(n)`` (apart from 1/2)."""
    if n < 3:
        raise ContractViolation(f"sigma_n needs n >= 3, got {n}")
    top = 2 ** (n - 2)
    return Fraction(top, 2 ** (n - 1) + 1), Fraction(top, 2 ** (n - 1) - 1)


# -- lap-based enumeration -------------------------------------------------


@dataclass(frozen=True)
class CoordinateLap:
    """A lap on which every orbit coordinate ``T^k`` (k < n) is affine."""

    lo: Fraction
    hi: Fraction
    coords: tuple[Affine, ...]


def _branch(tent: TentMap, coord: Affine, left: bool) -> Affine:
    s, c = coord
    two_mu = 2 * tent.mu
    if left:
        return two_mu * s, two_mu * c
    return -two_mu * s, two_mu * (1 - c)


def coordinate_laps(tent: TentMap, n: int) -> list[CoordinateLap]:
    """Common lap partition for ``T^0 .. T^{n-1}``.

    The cut points are exactly the preimages of 1/2 up to depth ``n - 2``.
    """
    laps = [CoordinateLap(ZERO, ONE, ((ONE, ZERO),))]
    for _ in range(n - 1):
        nxt = []
        for lap in laps:
            s, c = lap.coords[-1]
            pieces = [(lap.lo, lap.hi)]
            v_lo, v_hi = s * lap.lo + c, s * lap.hi + c
            if min(v_lo, v_hi) < HALF < max(v_lo, v_hi):
                cut = (HALF - c) / s
                pieces = [(lap.lo, cut), (cut, lap.hi)]
            for lo, hi in pieces:
                left = s * (lo + hi) / 2 + c <= HALF
                nxt.append(CoordinateLap(lo, hi, lap.coords + (_branch(tent, (s, c), left),)))
        laps = nxt
    return laps


@dataclass
class EnumerationReport:
    patterns: PatternSet
    witnesses: dict[Permutation, Fraction]
    laps: int
    pieces: int
    degenerate_pieces: int = 0


def _scan_lap(lap: CoordinateLap) -> tuple[dict[Permutation, Fraction], int, int]:
    coords = lap.coords
    n = len(coords)
    cuts = {lap.lo, lap.hi}
    degenerate = False
    for i in range(n):
        si, ci = coords[i]
        for j in range(i + 1, n):
            sj, cj = coords[j]
            if si == sj:
                if ci == cj:
                    degenerate = True
                continue
            x = (cj - ci) / (si - sj)
            if lap.lo < x < lap.hi:
                cuts.add(x)
    points = sorted(cuts)
    found: dict[Permutation, Fraction] = {}
    if degenerate:
        return found, len(points) - 1, len(points) - 1
    for lo, hi in zip(points, points[1:]):
        m = (lo + hi) / 2
        values = [s * m + c for s, c in coords]
        p = Permutation.from_values(values)
        found.setdefault(p, m)
    return found, len(points) - 1, 0


def _scan_chunk(chunk: list[CoordinateLap]) -> list[tuple[dict, int, int]]:
    return [_scan_lap(lap) for lap in chunk]


def enumerate_allowed_report(
    tent: TentMap, n: int, max_n: int = DEFAULT_MAX_N, workers: int | None = None
) -> EnumerationReport:
    """Exact allowed patterns of length ``n`` with one witness point each."""
    if not 1 <= n <= max_n:
        raise ContractViolation(f"pattern length must satisfy 1 <= n <= {max_n}, got {n}")
    laps = coordinate_laps(tent, n)
    if workers and workers > 1 and len(laps) > 64:
        size = -(-len(laps) // workers)
        chunks = [laps[i : i + size] for i in range(0, len(laps), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_scan_chunk, chunks) for r in part]
    else:
        results = [_scan_lap(lap) for lap in laps]
    witnesses: dict[Permutation, Fraction] = {}
    pieces = degenerate = 0
    for found, count, skipped in results:
        for p, m in found.items():
            witnesses.setdefault(p, m)
        pieces += count
        degenerate += skipped
    return EnumerationReport(
        PatternSet(n, frozenset(witnesses)), witnesses, len(laps), pieces, degenerate
    )


def enumerate_allowed(
    tent: TentMap, n: int, max_n: int = DEFAULT_MAX_N, workers: int | None = None
) -> PatternSet:
    return enumerate_allowed_report(tent, n, max_n, workers).patterns


# -- single-pattern realization -------------------------------------------


@dataclass(frozen=True)
class _Cell:
    lo: Fraction
    hi: Fraction
    coords: tuple[Affine, ...]


def _neighbours(pi: Permutation, k: int) -> tuple[int | None, int | None]:
    """Indices (< k) just below and just above entry ``k`` among the first k+1."""
    prefix = pi.entries[: k + 1]
    v = prefix[k]
    below = [i for i in range(k) if prefix[i] < v]
    above = [i for i in range(k) if prefix[i] > v]
    lo = max(below, key=lambda i: prefix[i]) if below else None
    hi = min(above, key=lambda i: prefix[i]) if above else None
    return lo, hi


def _impose_greater(lo: Fraction, hi: Fraction, big: Affine, small: Affine) -> tuple[Fraction, Fraction] | None:
    """Restrict the open interval to where ``big(x) > small(x)``."""
    s = big[0] - small[0]
    c = big[1] - small[1]
    if s == 0:
        return (lo, hi) if c > 0 else None
    root = -c / s
    if s > 0:
        lo = max(lo, root)
    else:
        hi = min(hi, root)
    return (lo, hi) if lo < hi else None


def realization_intervals(tent: TentMap, pi: "Permutation | str | Sequence[int]") -> list[tuple[Fraction, Fraction]]:
    """Open intervals whose points realize ``pi`` under ``tent``.

    Their union is the realization set minus finitely many points (the
    preimages of 1/2 where cells were split), so it is empty exactly when
    ``pi`` is forbidden.
    """
    pi = coerce_permutation(pi)
    cells = [_Cell(ZERO, ONE, ((ONE, ZERO),))]
    for k in range(1, len(pi)):
        below, above = _neighbours(pi, k)
        nxt = []
        for cell in cells:
            s, c = cell.coords[-1]
            pieces = [(cell.lo, cell.hi)]
            v_lo, v_hi = s * cell.lo + c, s * cell.hi + c
            if min(v_lo, v_hi) < HALF < max(v_lo, v_hi):
                cut = (HALF - c) / s
                pieces = [(cell.lo, cut), (cut, cell.hi)]
            for lo, hi in pieces:
                left = s * (lo + hi) / 2 + c <= HALF
                new = _branch(tent, (s, c), left)
                span: tuple[Fraction, Fraction] | None = (lo, hi)
                if below is not None:
                    span = _impose_greater(lo, hi, new, cell.coords[below])
                if span is not None and above is not None:
                    span = _impose_greater(span[0], span[1], cell.coords[above], new)
                if span is not None:
                    nxt.append(_Cell(span[0], span[1], cell.coords + (new,)))
        cells = nxt
        if not cells:
            break
    return [(cell.lo, cell.hi) for cell in cells]


def realization_witness(tent: TentMap, pi: "Permutation | str | Sequence[int]") -> Fraction | None:
    """Midpoint of the widest realization interval, or None if ``pi`` is forbidden."""
    spans = realization_intervals(tent, pi)
    if not spans:
        return None
    lo, hi = max(spans, key=lambda s: s[1] - s[0])
    return (lo + hi) / 2


def is_allowed(tent: TentMap, pi: "Permutation | str | Sequence[int]") -> bool:
    return bool(realization_intervals(tent, pi))


# -- transfer through the commuter -----------------------------------------


class Transfer(enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


def pattern_transfer_check(mu: RationalLike, x: RationalLike, n: int, depth: int) -> Transfer:
    """Check that the commuter carries the ``T_mu`` pattern of ``x`` to ``T``.

    The commuter values at the orbit points come from one deep evaluation:
    ``f_{d-k}(T_mu^k(x)) = T^k(f_d(x))`` exactly. Iterating the contraction
    from the identity, which lies within ``1 - mu`` of the commuter, bounds
    the error by ``(1 - mu) 2**-(d-k)``.
    """
    from .commuter import CommuterEvaluator

    mu = as_rational(mu)
    x = unit_point(x)
    if depth < n:
        raise ContractViolation(f"depth {depth} must be at least n = {n}")
    tent = TentMap(mu)
    target = pat(x, tent, n)
    top = CommuterEvaluator(mu).eval_depth(x, depth)
    values = FULL_TENT.orbit(top, n)
    encl = [
        Enclosure(v - (1 - mu) / 2 ** (depth - k), v + (1 - mu) / 2 ** (depth - k))
        for k, v in enumerate(values)
    ]
    status = Transfer.VERIFIED
    for i in range(n):
        for j in range(i + 1, n):
            verdict = strictly_below(encl[i], encl[j])
            expected = target[i] < target[j]
            if verdict is Order.UNKNOWN:
                status = Transfer.INCONCLUSIVE
            elif (verdict is Order.YES) != expected:
                return Transfer.REFUTED
    return status


def all_patterns(n: int) -> Iterable[Permutation]:
    from itertools import permutations

    for p in permutations(range(1, n + 1)):
        yield Permutation(p)
