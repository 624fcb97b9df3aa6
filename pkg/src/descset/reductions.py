"""Reductions from points and trees to index sets of the catalog families.

``phi_map(x)`` collects the words that branch off ``x``; ``h_image(x)`` is
the set of split-family indices ``4 h(t)`` for those words.  Over a set
``A`` with no eventually constant points the split subsequence indexed by
``h_image(x)`` converges on ``A`` exactly when ``x`` is not in ``A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Optional

from . import trees as tr
from .cantor import (
    Affine,
    ClopenSet,
    IndexSet,
    Naturals,
    NodeSet,
    Point,
    Restrict,
    Siblings,
    Undecidable,
    Union,
    _offchain_infinite,
    h_inv,
)
from .catalog import (
    DenseSequence,
    NodeIndicatorsByH,
    PointInd,
    Region,
    SplitCantorCanonical,
    SymbolicFn,
    Zero,
    diff_region,
)
from .convergence import (
    HALF,
    Converges,
    Diverges,
    _family,
    _require_infinite,
    _trim_length,
    chain_points,
    decide_convergence,
    split_strands,
)

# ---------------------------------------------------------------------------
# point sets


@dataclass(frozen=True)
class DecidablePointSet:
    """Points of ``region``, minus the eventually constant ones when asked."""

    region: Region
    exclude_eventually_constant: bool = True

    @classmethod
    def from_clopen(cls, c: ClopenSet, exclude_eventually_constant: bool = True) -> "DecidablePointSet":
        return cls(Region.clopen(c), exclude_eventually_constant)

    @classmethod
    def whole(cls) -> "DecidablePointSet":
        return cls(Region.whole(), True)

    @classmethod
    def points(cls, *pts: Point) -> "DecidablePointSet":
        r = Region.empty()
        for p in pts:
            r = r | Region.point(p)
        return cls(r, False)

    def contains(self, y: Point) -> bool:
        if self.exclude_eventually_constant and y.is_eventually_constant():
            return False
        return self.region.contains(y)

    __contains__ = contains

    def is_admissible(self) -> bool:
        """No eventually constant member."""
        if self.exclude_eventually_constant:
            return True
        # without the exclusion only isolated non-constant points qualify
        return all(
            iv.lo == iv.hi and not iv.lo.is_eventually_constant()
            for iv in self.region.intervals
        )

    def meet_point(self, r: Region) -> Optional[Point]:
        """Some member of ``self`` inside ``r``, or ``None``."""
        both = self.region & r
        for iv in both.intervals:
            if iv.lo == iv.hi:
                if self.contains(iv.lo):
                    return iv.lo
                continue
            if not self.exclude_eventually_constant:
                return Region.build([iv]).pick()
            found = _inner_point(Region.build([iv]), iv.lo, iv.hi)
            if found is not None:
                return found
        return None


def _inner_point(r: Region, lo: Point, hi: Point, limit: int = 512) -> Optional[Point]:
    """A point that is not eventually constant in a region spanning lo < hi."""
    for k in range(1, limit):
        for base, bit in ((lo, "1"), (hi, "0")):
            u = base.word(k - 1) + bit
            if Region.cylinder(u).subset(r):
                return Point(u, "01")
    return None


def _require_admissible(A: DecidablePointSet):
    if not A.is_admissible():
        raise ValueError("A contains an eventually constant point")


# ---------------------------------------------------------------------------
# the maps


def phi_map(x: Point) -> IndexSet:
    """The words ``x|k`` followed by the flipped bit ``x(k)``, as h-codes."""
    return Siblings(x)


def h_image(x: Point) -> IndexSet:
    return Affine(Siblings(x), 4, 0)


def branch_from_siblings(words) -> str:
    """The prefix of ``x`` recovered from the first words of ``phi_map(x)``."""
    out = []
    for k, t in enumerate(words):
        if len(t) != k + 1 or t[:k] != "".join(out):
            raise ValueError("not an initial segment of a sibling set")
        out.append("1" if t[k] == "0" else "0")
    return "".join(out)


def recover_prefix(H: IndexSet, n: int) -> str:
    words = [h_inv(m // 4) for m in islice(iter(H), n)]
    return branch_from_siblings(words)


# ---------------------------------------------------------------------------
# restriction to A


@dataclass(frozen=True)
class RestrictedFamily:
    seq: DenseSequence
    A: DecidablePointSet

    def __getitem__(self, n: int) -> SymbolicFn:
        return self.seq[n]

    def eval(self, n: int, y: Point):
        if not self.A.contains(y):
            raise ValueError("point outside the domain A")
        return self.seq[n].eval(y)


def restrict_family(seq: DenseSequence, A: DecidablePointSet) -> RestrictedFamily:
    _require_admissible(A)
    return RestrictedFamily(seq, A)


def decide_restricted(fam: RestrictedFamily, L: IndexSet, scan: int = 4096):
    """Convergence on ``A`` only.  Limits are reported as functions whose
    values off ``A`` do not matter."""
    _require_infinite(L)
    base = _family(fam.seq)
    A = fam.A
    if isinstance(base, SplitCantorCanonical):
        strands = split_strands(L)
        if not strands:
            raise Undecidable("undecidable presentation")
        limits = [s.limit() for s in strands]
        for s, g in zip(strands, limits):
            z = A.meet_point(diff_region(limits[0], g, HALF))
            if z is not None:
                lo, hi = (strands[0], s) if limits[0].eval(z) < g.eval(z) else (s, strands[0])
                return Diverges(
                    z,
                    lo.trimmed(_trim_length(lo.anchor, z)),
                    hi.trimmed(_trim_length(hi.anchor, z)),
                )
        return Converges(limits[0])
    if isinstance(base, NodeIndicatorsByH):
        if isinstance(L, Naturals) and A.exclude_eventually_constant:
            # every chain point of the full tree ends in zeros
            return Converges(Zero())
        inside = []
        for k, y in enumerate(chain_points(L)):
            if k >= scan:
                raise Undecidable("undecidable presentation")
            if A.contains(y):
                if _offchain_infinite(L, frozenset([y])):
                    return Diverges(y, Restrict(L, y, False), Restrict(L, y, True))
                inside.append(y)
        return Converges(PointInd(inside[0]) if inside else Zero())
    raise Undecidable("undecidable presentation")


def verify_p1(x: Point, A: DecidablePointSet) -> bool:
    """Whether ``x not in A`` matches convergence on ``A`` along ``h_image(x)``.

    Always true for admissible ``A``; false signals a defect.
    """
    fam = restrict_family(SplitCantorCanonical(), A)
    lhs = not A.contains(x)
    rhs = isinstance(decide_restricted(fam, h_image(x)), Converges)
    return lhs == rhs


# ---------------------------------------------------------------------------
# gluing trees


@dataclass(frozen=True)
class HCoding:
    """Nodes are coded by ``h`` of their binary encoding."""


@dataclass(frozen=True)
class AffineHCoding:
    """``a * h(e(t)) + b``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b < 0:
            raise ValueError("coding is not injective: need a > 0 and b >= 0")


def psi_glue(T: tr.Schema, T0: tr.Schema, coding=HCoding()) -> IndexSet:
    """Codes of the nodes of ``T`` together with those of ``T0``."""
    if not tr.is_wellfounded(T0) or not tr.is_infinite(T0):
        raise ValueError("T0 must be well-founded and infinite")
    base = Union((NodeSet(T), NodeSet(T0)))
    if isinstance(coding, HCoding):
        return base
    if isinstance(coding, AffineHCoding):
        return Affine(base, coding.a, coding.b)
    if isinstance(coding, dict):
        raise ValueError("a finite table cannot code the infinite tree T0")
    raise ValueError(f"unsupported coding: {coding!r}")


def glue_verdict(T: tr.Schema, T0: tr.Schema):
    return decide_convergence(NodeIndicatorsByH(), psi_glue(T, T0))
