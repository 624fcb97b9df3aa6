"""Catalog functions on Cantor space and exact regions where they differ.

Every catalog function takes one value on a region and another off it.  A
``Region`` is a finite union of lexicographic intervals with eventually
periodic endpoints, which is enough to hold cylinders, single points and
the half-lines ``{y : x <= y}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cantor import (
    ONES,
    ZEROS,
    ClopenSet,
    Cylinder,
    Point,
    first_difference,
    h_inv,
    lex_compare,
    predecessor,
    successor,
)

# ---------------------------------------------------------------------------
# lexicographic intervals


@dataclass(frozen=True)
class Interval:
    lo: Point
    hi: Point
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, y: Point) -> bool:
        c_lo = lex_compare(self.lo, y)
        c_hi = lex_compare(y, self.hi)
        ok_lo = c_lo == "less" or (c_lo == "equal" and self.lo_closed)
        ok_hi = c_hi == "less" or (c_hi == "equal" and self.hi_closed)
        return ok_lo and ok_hi


def _normalize(iv: Interval) -> Optional[Interval]:
    """Close open ends where an adjacent point exists; ``None`` if empty."""
    lo, hi, lc, hc = iv.lo, iv.hi, iv.lo_closed, iv.hi_closed
    if not lc:
        if lo == ONES:
            return None
        s = successor(lo)
        if s is not None:
            lo, lc = s, True
    if not hc:
        if hi == ZEROS:
            return None
        p = predecessor(hi)
        if p is not None:
            hi, hc = p, True
    c = lex_compare(lo, hi)
    # an open end without a neighbour has points arbitrarily close to it,
    # so lo < hi always leaves something inside
    if c == "greater" or (c == "equal" and not (lc and hc)):
        return None
    return Interval(lo, hi, lc, hc)


def _lo_key_lt(a: Interval, b: Interval) -> bool:
    c = lex_compare(a.lo, b.lo)
    return c == "less" or (c == "equal" and a.lo_closed and not b.lo_closed)


def _touches(a: Interval, b: Interval) -> bool:
    """``b`` starts no later than just after ``a`` ends (given a.lo <= b.lo)."""
    c = lex_compare(b.lo, a.hi)
    if c == "less":
        return True
    if c == "equal":
        return a.hi_closed or b.lo_closed
    # no point strictly between a closed end and its neighbour
    return a.hi_closed and b.lo_closed and successor(a.hi) == b.lo


def _hi_max(a: Interval, b: Interval) -> tuple:
    c = lex_compare(a.hi, b.hi)
    if c == "less":
        return b.hi, b.hi_closed
    if c == "greater":
        return a.hi, a.hi_closed
    return a.hi, a.hi_closed or b.hi_closed


@dataclass(frozen=True)
class Region:
    """Sorted, pairwise separated, normalized intervals."""

    intervals: tuple = ()

    @classmethod
    def build(cls, intervals) -> "Region":
        ivs = [n for n in (_normalize(iv) for iv in intervals) if n is not None]
        ivs.sort(key=_SortKey)
        merged: list = []
        for iv in ivs:
            if merged and _touches(merged[-1], iv):
                last = merged[-1]
                hi, hc = _hi_max(last, iv)
                merged[-1] = Interval(last.lo, hi, last.lo_closed, hc)
            else:
                merged.append(iv)
        return cls(tuple(merged))

    @classmethod
    def empty(cls) -> "Region":
        return cls(())

    @classmethod
    def whole(cls) -> "Region":
        return cls.build([Interval(ZEROS, ONES)])

    @classmethod
    def cylinder(cls, word: str) -> "Region":
        c = Cylinder(word)
        return cls.build([Interval(c.lo, c.hi)])

    @classmethod
    def clopen(cls, c: ClopenSet) -> "Region":
        return cls.build([Interval(Cylinder(w).lo, Cylinder(w).hi) for w in c.words])

    @classmethod
    def point(cls, x: Point) -> "Region":
        return cls.build([Interval(x, x)])

    @classmethod
    def from_(cls, x: Point, closed: bool = True) -> "Region":
        """``{y : x <= y}`` or, when not closed, ``{y : x < y}``."""
        return cls.build([Interval(x, ONES, closed, True)])

    def is_empty(self) -> bool:
        return not self.intervals

    def pick(self) -> Point:
        """Some point of the region."""
        if not self.intervals:
            raise ValueError("empty region")
        iv = self.intervals[0]
        if iv.lo_closed:
            return iv.lo
        if iv.hi_closed:
            return iv.hi
        # both ends open, so lo has no successor and carries a 0 past the
        # first disagreement with hi; raising one such 0 lands strictly inside
        i = first_difference(iv.lo, iv.hi)
        j = i + 1
        while iv.lo.bit(j) != 0:
            j += 1
        return Point(iv.lo.word(j), "1")

    def contains(self, y: Point) -> bool:
        return any(iv.contains(y) for iv in self.intervals)

    def union(self, other: "Region") -> "Region":
        return Region.build(self.intervals + other.intervals)

    def complement(self) -> "Region":
        gaps = []
        lo, lc = ZEROS, True
        for iv in self.intervals:
            gaps.append(Interval(lo, iv.lo, lc, not iv.lo_closed))
            lo, lc = iv.hi, not iv.hi_closed
        gaps.append(Interval(lo, ONES, lc, True))
        return Region.build(gaps)

    def intersect(self, other: "Region") -> "Region":
        pieces = []
        for iv in self.intervals:
            for jv in other.intervals:
                c = lex_compare(iv.lo, jv.lo)
                lo, lc = (jv.lo, jv.lo_closed) if c == "less" else (iv.lo, iv.lo_closed)
                if c == "equal":
                    lc = iv.lo_closed and jv.lo_closed
                c = lex_compare(iv.hi, jv.hi)
                hi, hc = (iv.hi, iv.hi_closed) if c == "less" else (jv.hi, jv.hi_closed)
                if c == "equal":
                    hc = iv.hi_closed and jv.hi_closed
                pieces.append(Interval(lo, hi, lc, hc))
        return Region.build(pieces)

    def minus(self, other: "Region") -> "Region":
        return self.intersect(other.complement())

    def subset(self, other: "Region") -> bool:
        # normalized intervals leave a point in every gap, so each piece of
        # self must sit inside a single piece of other
        return all(any(_inside(iv, jv) for jv in other.intervals) for iv in self.intervals)

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersect(other)

    def __invert__(self):
        return self.complement()


class _SortKey:
    def __init__(self, iv: Interval):
        self.iv = iv

    def __lt__(self, other: "_SortKey") -> bool:
        return _lo_key_lt(self.iv, other.iv)


def _inside(iv: Interval, jv: Interval) -> bool:
    c = lex_compare(jv.lo, iv.lo)
    lo_ok = c == "less" or (c == "equal" and (jv.lo_closed or not iv.lo_closed))
    c = lex_compare(iv.hi, jv.hi)
    hi_ok = c == "less" or (c == "equal" and (jv.hi_closed or not iv.hi_closed))
    return lo_ok and hi_ok


def region_covers(cyl: Cylinder, regions) -> bool:
    """Whether the cylinder lies inside the union of the regions."""
    total = Region.empty()
    for r in regions:
        total = total | r
    return Region.cylinder(cyl.word).subset(total)


# ---------------------------------------------------------------------------
# symbolic functions


class SymbolicFn:
    """A function taking ``on`` inside ``support()`` and ``off`` outside."""

    on: Fraction = Fraction(1)
    off: Fraction = Fraction(0)

    def support(self) -> Region:
        raise NotImplementedError

    def eval(self, y: Point) -> Fraction:
        return self.on if self.support().contains(y) else self.off


@dataclass(frozen=True)
class PlusStep(SymbolicFn):
    """Indicator of ``{y : x <= y}``."""

    x: Point

    def support(self):
        return Region.from_(self.x, closed=True)


@dataclass(frozen=True)
class MinusStep(SymbolicFn):
    """Indicator of ``{y : x < y}``."""

    x: Point

    def support(self):
        return Region.from_(self.x, closed=False)


@dataclass(frozen=True)
class NodeInd(SymbolicFn):
    """Indicator of the cylinder of ``word``."""

    word: str

    def support(self):
        return Region.cylinder(self.word)


@dataclass(frozen=True)
class PointInd(SymbolicFn):
    point: Point

    def support(self):
        return Region.point(self.point)


@dataclass(frozen=True)
class Const(SymbolicFn):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def on(self):
        return self.value

    @property
    def off(self):
        return self.value

    def support(self):
        return Region.whole()


@dataclass(frozen=True)
class Zero(SymbolicFn):
    @property
    def on(self):
        return Fraction(0)

    def support(self):
        return Region.empty()


def evaluate(f: SymbolicFn, y: Point) -> Fraction:
    return f.eval(y)


def diff_region(f: SymbolicFn, g: SymbolicFn, theta=Fraction(0)) -> Region:
    """Exactly ``{z : |f(z) - g(z)| > theta}``."""
    theta = Fraction(theta)
    if theta < 0:
        raise ValueError("theta must be non-negative")
    F, G = f.support(), g.support()
    out = Region.empty()
    for f_in in (True, False):
        for g_in in (True, False):
            v = f.on if f_in else f.off
            w = g.on if g_in else g.off
            if abs(v - w) > theta:
                out = out | ((F if f_in else ~F) & (G if g_in else ~G))
    return out


def equivalent(f: SymbolicFn, g: SymbolicFn) -> bool:
    """Extensional equality on all of Cantor space."""
    return diff_region(f, g, 0).is_empty()


# ---------------------------------------------------------------------------
# dense sequences


class DenseSequence:
    def term(self, n: int) -> SymbolicFn:
        raise NotImplementedError

    def __getitem__(self, n: int) -> SymbolicFn:
        if n < 0:
            raise IndexError("negative index")
        return self.term(n)


@dataclass(frozen=True)
class NodeIndicatorsByH(DenseSequence):
    """``f_n`` is the indicator of the cylinder of ``h_inv(n)``."""

    def term(self, n):
        return NodeInd(h_inv(n))


@dataclass(frozen=True)
class SplitCantorCanonical(DenseSequence):
    """Step functions at ``s0^inf`` and ``s1^inf`` in blocks of four, with s = h_inv(n // 4)."""

    def term(self, n):
        m, j = divmod(n, 4)
        s = h_inv(m)
        x = Point(s, "0" if j in (0, 2) else "1")
        return PlusStep(x) if j < 2 else MinusStep(x)


@dataclass(frozen=True)
class FiniteTableWithTail(DenseSequence):
    """The first entries come from ``table``; the rest follow ``tail``."""

    table: tuple
    tail: DenseSequence

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))

    def term(self, n):
        return self.table[n] if n < len(self.table) else self.tail.term(n)


def split_index(n: int) -> tuple:
    """Decompose a split-family index into (word, bit, sign)."""
    m, j = divmod(n, 4)
    return h_inv(m), j % 2, "+" if j < 2 else "-"
