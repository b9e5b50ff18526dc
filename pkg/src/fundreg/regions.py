"""Concrete fundamental-region constructions.

Five region kinds are modelled, each with the exact data the verification
ops need:

* ``free2house``: the spine-of-triangles region in the glued room space,
  given per room as cells from :mod:`fundreg.tilespace`.
* ``line-standard``: the unit interval (0, 1) under integer translation.
* ``line-pathological``: an infinite union of shrinking open intervals,
  one near each natural number, whose fractional parts tile [0, 1).
* ``plane-pathological``: a hyperbola-hugging connected strip in the
  punctured-lattice plane, held as a membership predicate.
* ``cylinder``: the band X x (0, c) shifted by a homeomorphism that adds
  c to the real coordinate.

Everything here is exact rational arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .freegroup import ReducedWord, r_power
from .tilespace import Cell

Rational = Union[int, Fraction]

KINDS = (
    "free2house",
    "line-standard",
    "line-pathological",
    "plane-pathological",
    "cylinder",
)


def _frac(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def format_fraction(value: Fraction) -> str:
    """Exact "p/q" text used in serialized interval data."""
    value = _frac(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ------------------------------------------------------------- intervals


class IntervalSet:
    """Finite ordered union of disjoint open rational intervals.

    Open intervals may share endpoints (their closures then touch);
    overlapping interiors are rejected.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[Rational, Rational]]) -> None:
        norm = sorted((_frac(lo), _frac(hi)) for lo, hi in pairs)
        for lo, hi in norm:
            if not lo < hi:
                raise ValueError(f"empty or inverted interval ({lo}, {hi})")
        for (_, hi), (lo, _) in zip(norm, norm[1:]):
            if lo < hi:
                raise ValueError("intervals overlap")
        self.pairs: tuple[tuple[Fraction, Fraction], ...] = tuple(norm)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntervalSet) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({format_fraction(lo)}, {format_fraction(hi)})" for lo, hi in self.pairs
        )
        return f"IntervalSet[{inner}]"

    def translate(self, shift: Rational) -> "IntervalSet":
        shift = _frac(shift)
        return IntervalSet((lo + shift, hi + shift) for lo, hi in self.pairs)

    def contains(self, point: Rational) -> bool:
        point = _frac(point)
        return any(lo < point < hi for lo, hi in self.pairs)

    def closure_contains(self, point: Rational) -> bool:
        point = _frac(point)
        return any(lo <= point <= hi for lo, hi in self.pairs)

    def endpoints(self) -> tuple[Fraction, ...]:
        """Boundary of the set: every interval endpoint, deduplicated."""
        seen = sorted({value for pair in self.pairs for value in pair})
        return tuple(seen)

    def intersects(self, other: "IntervalSet") -> bool:
        return self.first_overlap(other) is not None

    def first_overlap(
        self, other: "IntervalSet"
    ) -> Optional[tuple[Fraction, Fraction]]:
        """Leftmost open overlap between the two interiors, if any."""
        i = j = 0
        while i < len(self.pairs) and j < len(other.pairs):
            alo, ahi = self.pairs[i]
            blo, bhi = other.pairs[j]
            lo, hi = max(alo, blo), min(ahi, bhi)
            if lo < hi:
                return (lo, hi)
            if ahi <= bhi:
                i += 1
            else:
                j += 1
        return None

    def closed_intersection(
        self, other: "IntervalSet"
    ) -> list[tuple[Fraction, Fraction]]:
        """Pieces of closure(self) & closure(other); lo == hi marks a point."""
        pieces: list[tuple[Fraction, Fraction]] = []
        i = j = 0
        while i < len(self.pairs) and j < len(other.pairs):
            alo, ahi = self.pairs[i]
            blo, bhi = other.pairs[j]
            lo, hi = max(alo, blo), min(ahi, bhi)
            if lo <= hi:
                pieces.append((lo, hi))
            if ahi <= bhi:
                i += 1
            else:
                j += 1
        return pieces

    def closure_meets_open_window(self, lo: Rational, hi: Rational) -> bool:
        lo, hi = _frac(lo), _frac(hi)
        return any(a < hi and b > lo for a, b in self.pairs)

    def merged_closure(self) -> list[tuple[Fraction, Fraction]]:
        """Union of the closed intervals, with touching pieces fused."""
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in self.pairs:
            if merged and lo <= merged[-1][1]:
                last_lo, last_hi = merged[-1]
                merged[-1] = (last_lo, max(last_hi, hi))
            else:
                merged.append((lo, hi))
        return merged

    def closure_covers(self, lo: Rational, hi: Rational) -> bool:
        """Whether the closed union contains the whole window [lo, hi]."""
        lo, hi = _frac(lo), _frac(hi)
        for a, b in self.merged_closure():
            if a <= lo and hi <= b:
                return True
        return False

    def coverage_gap(self, lo: Rational, hi: Rational) -> Optional[Fraction]:
        """A witness point of [lo, hi] missed by the closed union, if any."""
        lo, hi = _frac(lo), _frac(hi)
        cursor = lo
        for a, b in self.merged_closure():
            if b < cursor:
                continue
            if a > cursor:
                break
            cursor = b
            if cursor >= hi:
                return None
        if cursor >= hi:
            return None
        remaining_starts = [a for a, _ in self.merged_closure() if a > cursor]
        next_start = min(remaining_starts + [hi])
        return cursor + (min(next_start, hi) - cursor) / 2 if cursor < hi else None

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.pairs + other.pairs)

    def serialize(self) -> list[list[str]]:
        return [[format_fraction(lo), format_fraction(hi)] for lo, hi in self.pairs]


def standard_interval() -> IntervalSet:
    return IntervalSet([(0, 1)])


def corrupted_interval() -> IntervalSet:
    """Deliberately too-wide interval; refutation demo under translation."""
    return IntervalSet([(0, Fraction(3, 2))])


def pathological_interval(n: int) -> tuple[Fraction, Fraction]:
    """The n-th interval: sits inside (n, n+1), width 1/((n+1)(n+2))."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return (n + Fraction(n, n + 1), n + Fraction(n + 1, n + 2))


def pathological_1d(count: int) -> IntervalSet:
    if count < 1:
        raise ValueError("need at least one interval")
    return IntervalSet(pathological_interval(n) for n in range(count))


# --------------------------------------------------------------- plane 2d


def plane2d_membership(x: Rational, y: Rational) -> bool:
    """Open membership in the hyperbola strip over x in (0, 1)."""
    x, y = _frac(x), _frac(y)
    if x == 0:
        raise ValueError("outside chart")
    if not 0 < x < 1:
        return False
    return 1 / x < y < 1 / x + 1


def plane2d_closure_membership(x: Rational, y: Rational) -> bool:
    """Closure membership: x in (0, 1], y in [1/x, 1/x + 1]."""
    x, y = _frac(x), _frac(y)
    if x == 0:
        raise ValueError("outside chart")
    if not 0 < x <= 1:
        return False
    return 1 / x <= y <= 1 / x + 1


def plane2d_point_above(height: Rational) -> tuple[Fraction, Fraction]:
    """A region point with second coordinate above the given height."""
    height = _frac(height)
    x = 1 / (height + 2)
    return (x, 1 / x + Fraction(1, 2))


def plane2d_translate_meets_box(
    m: int,
    n: int,
    half_width: Rational,
    center: tuple[Rational, Rational] = (0, 0),
) -> bool:
    """Whether closure(region) + (m, n) meets an open square box.

    The box is (cx - w, cx + w) x (cy - w, cy + w).  Exact endpoint
    arithmetic: for each open slice of x values the translated closure
    sweeps a y interval whose ends are 1/x + n and 1/x + n + 1.
    """
    w = _frac(half_width)
    cx, cy = _frac(center[0]), _frac(center[1])
    x_lo = max(cx - w - m, Fraction(0))
    x_hi = min(cx + w - m, Fraction(1))
    if x_lo >= x_hi:
        return False
    # On x in (x_lo, x_hi], 1/x covers [1/x_hi, 1/x_lo) (or up to infinity
    # when x_lo == 0), so the union of the closed bands [1/x, 1/x + 1] is
    # exactly (limit handling below) an interval with those ends widened
    # by one on the right.
    band_lo = 1 / x_hi
    band_hi = None if x_lo == 0 else 1 / x_lo + 1
    y_lo, y_hi = cy - w - n, cy + w - n
    if y_hi <= band_lo:
        return False
    if band_hi is not None and y_lo >= band_hi:
        return False
    return True


# --------------------------------------------------------------- cylinder


def cylinder_overlap_set(
    c: Rational, margin: Optional[tuple[Rational, Rational]] = None
) -> set[int]:
    """Integers m for which the m-fold shift of the band U meets U.

    U defaults to (-c, 2c), a neighbourhood of the closed band [0, c].
    """
    c = _frac(c)
    if c <= 0:
        raise ValueError("shift must be positive")
    lo, hi = margin if margin is not None else (-c, 2 * c)
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise ValueError("empty margin band")
    out: set[int] = set()
    m = 0
    while m * c < hi - lo:
        out.add(m)
        out.add(-m)
        m += 1
    return out


# ----------------------------------------------------- free-2-house cells


def free2house_region_cells(radius: int) -> dict[ReducedWord, Cell]:
    """Open region: one open upper triangle per spine room; rest empty."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return {
        r_power(i): Cell.OPEN_UPPER_TRIANGLE for i in range(-radius, radius + 1)
    }


def free2house_closure_cells(radius: int) -> dict[ReducedWord, Cell]:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return {
        r_power(i): Cell.CLOSED_UPPER_TRIANGLE for i in range(-radius, radius + 1)
    }


def free2house_boundary_cells(radius: int) -> dict[ReducedWord, Cell]:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return {r_power(i): Cell.UPPER_BOUNDARY for i in range(-radius, radius + 1)}


# ------------------------------------------------------------------ specs


@dataclass(frozen=True)
class RegionSpec:
    """Descriptor naming one of the modelled regions plus its parameters."""

    kind: str
    shift: Optional[Fraction] = None
    x_compact: Optional[bool] = None
    intervals: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind == "cylinder":
            if self.shift is None or self.shift <= 0:
                raise ValueError("cylinder needs a positive shift")
        elif self.shift is not None:
            raise ValueError("shift only applies to the cylinder")

    def descriptor(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.shift is not None:
            data["shift"] = format_fraction(self.shift)
        if self.x_compact is not None:
            data["x_compact"] = self.x_compact
        if self.intervals is not None:
            data["intervals"] = self.intervals
        return data


def cylinder_spec(shift: Rational, x_compact: bool = True) -> RegionSpec:
    return RegionSpec("cylinder", shift=_frac(shift), x_compact=x_compact)
