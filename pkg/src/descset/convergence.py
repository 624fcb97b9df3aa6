"""Pointwise convergence of subsequences of the catalog dense sequences.

For the node indicators, ``(f_n)_{n in L}`` converges at ``y`` unless
infinitely many words of ``L`` are prefixes of ``y`` and infinitely many
are not.  So the verdict comes from the points along which ``L`` has an
infinite chain.

For the split family, an index ``4m + j`` is a step function cut at
``h_inv(m) + c^inf`` (``c = j % 2``).  ``L`` is broken into strands whose
cut points converge to a known point from a known side; the subsequence
converges iff all strand limits agree as functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import count, islice
from typing import Iterator, Optional

from . import trees as tr
from .cantor import (
    ONES,
    ZEROS,
    Above,
    Affine,
    Drop,
    Finite,
    IndexSet,
    LongWords,
    Naturals,
    NodeSet,
    Point,
    Restrict,
    Siblings,
    Undecidable,
    Union,
    _offchain_infinite,
    branch_point,
    first_difference,
    h_enum,
    infinitely_many_prefixes,
)
from .catalog import (
    DenseSequence,
    FiniteTableWithTail,
    MinusStep,
    NodeIndicatorsByH,
    PlusStep,
    PointInd,
    SplitCantorCanonical,
    SymbolicFn,
    Zero,
    diff_region,
    equivalent,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Converges:
    limit: SymbolicFn


@dataclass(frozen=True)
class Diverges:
    """At ``witness`` every term indexed by ``sub_hi`` exceeds every term
    indexed by ``sub_lo`` by more than ``theta``."""

    witness: Point
    sub_lo: IndexSet
    sub_hi: IndexSet
    theta: Fraction = HALF


Verdict = object


def _family(seq: DenseSequence) -> DenseSequence:
    # a finite table changes finitely many terms, which never matters here
    while isinstance(seq, FiniteTableWithTail):
        seq = seq.tail
    return seq


def _require_infinite(L: IndexSet):
    if not L.is_infinite():
        raise ValueError("index set must be infinite")


# ---------------------------------------------------------------------------
# node indicators


def chain_points(W: IndexSet) -> Iterator[Point]:
    """Points having infinitely many prefixes among the words of ``W``."""
    if isinstance(W, (Finite, Siblings)):
        return
    if isinstance(W, Naturals):
        yield ZEROS
        for k in count(1):
            yield Point("1" * k, "0")
    elif isinstance(W, NodeSet):
        for s in tr.iter_branch_starts(W.tree):
            yield branch_point(s)
    elif isinstance(W, Restrict):
        if W.inside:
            if infinitely_many_prefixes(W.inner, W.point):
                yield W.point
        else:
            for y in chain_points(W.inner):
                if y != W.point:
                    yield y
    elif isinstance(W, (LongWords, Above, Drop)):
        yield from chain_points(W.inner)
    elif isinstance(W, Union):
        for p in W.parts:
            yield from chain_points(p)
    else:
        raise Undecidable("undecidable presentation")


def _decide_nodes(L: IndexSet) -> Verdict:
    y = next(chain_points(L), None)
    if y is None:
        return Converges(Zero())
    if _offchain_infinite(L, frozenset([y])):
        return Diverges(y, Restrict(L, y, False), Restrict(L, y, True))
    return Converges(PointInd(y))


# ---------------------------------------------------------------------------
# split family


@dataclass(frozen=True)
class Strand:
    """An infinite part of ``L`` whose cut points converge to ``anchor``.

    ``words`` is a word-level index set, ``j`` the residue mod 4, and
    ``above`` an optional lower bound on the resulting indices.
    """

    words: IndexSet
    j: int
    anchor: Point
    kind: str  # "chain" or "siblings"
    bit: Optional[int] = None  # for siblings: the bit of the anchor at the branching positions
    above: Optional[int] = None

    def expr(self) -> IndexSet:
        e = Affine(self.words, 4, self.j)
        return e if self.above is None else Above(e, self.above)

    def trimmed(self, min_len: int) -> IndexSet:
        return replace(self, words=LongWords(self.words, min_len)).expr()

    def limit(self) -> SymbolicFn:
        c, plus = self.j % 2, self.j < 2
        y = self.anchor
        if self.kind == "chain":
            if y.period == str(c):
                # the cut points reach y itself
                return PlusStep(y) if plus else MinusStep(y)
            return PlusStep(y) if c == 0 else MinusStep(y)
        # branching off where y has a 1 lands below y, where it has a 0 above
        return PlusStep(y) if self.bit == 1 else MinusStep(y)


def word_strands(W: IndexSet) -> list:
    """Split a word-level set into chains and sibling families.

    Returns ``(words, kind, anchor, bit)`` tuples covering all but finitely
    many words; raises ``Undecidable`` when something else is left over.
    """
    if isinstance(W, Finite):
        return []
    if isinstance(W, Siblings):
        bits = [W.bit] if W.bit is not None else [0, 1]
        return [
            (Siblings(W.point, b), "siblings", W.point, b)
            for b in bits
            if Siblings(W.point, b).is_infinite()
        ]
    if isinstance(W, NodeSet):
        T = W.tree
        if T.empty:
            return []
        if tr.has_infinite_fan(T):
            raise Undecidable("undecidable presentation")
        ys = [branch_point(s) for s in tr.iter_branch_starts(T)]
        return [(Restrict(W, y, True), "chain", y, None) for y in ys]
    if isinstance(W, Restrict):
        if W.inside:
            if infinitely_many_prefixes(W.inner, W.point):
                return [(W, "chain", W.point, None)]
            return []
        out = []
        for words, kind, y, bit in word_strands(W.inner):
            if kind == "chain" and y == W.point:
                continue
            out.append((Restrict(words, W.point, False), kind, y, bit))
        return out
    if isinstance(W, LongWords):
        return [(LongWords(w, W.min_len), k, y, b) for w, k, y, b in word_strands(W.inner)]
    if isinstance(W, Above):
        return [(Above(w, W.bound), k, y, b) for w, k, y, b in word_strands(W.inner)]
    if isinstance(W, Drop):
        # dropping the first k of a subset stays inside the dropped whole
        return [(Drop(w, W.k), k, y, b) for w, k, y, b in word_strands(W.inner)]
    if isinstance(W, Union):
        return [s for p in W.parts for s in word_strands(p)]
    raise Undecidable("undecidable presentation")


def split_strands(L: IndexSet, above: Optional[int] = None) -> list:
    if isinstance(L, Finite):
        return []
    if isinstance(L, Union):
        return [s for p in L.parts for s in split_strands(p, above)]
    if isinstance(L, Above):
        b = L.bound if above is None else max(above, L.bound)
        return split_strands(L.inner, b)
    if isinstance(L, Drop):
        if L.k == 0:
            return split_strands(L.inner, above)
        try:
            cut = L.inner.kth(L.k - 1)
        except IndexError:
            return []
        return split_strands(L.inner, cut if above is None else max(above, cut))
    if isinstance(L, Affine) and L.a == 4 and L.b < 4:
        return [
            Strand(w, L.b, y, kind, bit, above)
            for w, kind, y, bit in word_strands(L.inner)
            if w.is_infinite()
        ]
    raise Undecidable("undecidable presentation")


def _trim_length(anchor: Point, z: Point) -> int:
    d = first_difference(anchor, z)
    return 2 + max(anchor.size, 0 if d is None else d)


def _full_residue(L: IndexSet) -> Optional[int]:
    if isinstance(L, Naturals):
        return 0
    if isinstance(L, Affine) and L.a == 4 and L.b < 4 and isinstance(L.inner, Naturals):
        return L.b
    return None


def _decide_split(L: IndexSet) -> Verdict:
    j = _full_residue(L)
    if j is not None:
        # all words is no finite union of strands, but the chain 0^k and the
        # siblings of 1^inf already have different limits
        strands = [Strand(Restrict(Naturals(), ZEROS, True), j, ZEROS, "chain"),
                   Strand(Siblings(ONES, 1), j, ONES, "siblings", 1)]
    else:
        strands = split_strands(L)
    if not strands:
        raise Undecidable("undecidable presentation")
    limits = [s.limit() for s in strands]
    base = limits[0]
    for s, g in zip(strands, limits):
        if not equivalent(base, g):
            region = diff_region(base, g, HALF)
            z = region.pick()
            lo, hi = (strands[0], s) if base.eval(z) < g.eval(z) else (s, strands[0])
            return Diverges(
                z,
                lo.trimmed(_trim_length(lo.anchor, z)),
                hi.trimmed(_trim_length(hi.anchor, z)),
            )
    return Converges(base)


# ---------------------------------------------------------------------------
# public operations


def decide_convergence(seq: DenseSequence, L: IndexSet) -> Verdict:
    _require_infinite(L)
    fam = _family(seq)
    if isinstance(fam, NodeIndicatorsByH):
        return _decide_nodes(L)
    if isinstance(fam, SplitCantorCanonical):
        return _decide_split(L)
    raise Undecidable("undecidable presentation")


def decide_convergence_to(seq: DenseSequence, L: IndexSet, f: SymbolicFn) -> bool:
    v = decide_convergence(seq, L)
    return isinstance(v, Converges) and equivalent(v.limit, f)


def refine_to_convergent(seq: DenseSequence, M: IndexSet) -> IndexSet:
    """An infinite subset of ``M`` along which the sequence converges."""
    _require_infinite(M)
    fam = _family(seq)
    if isinstance(fam, NodeIndicatorsByH):
        if isinstance(M, Naturals):
            return Siblings(ZEROS)
        if isinstance(_decide_nodes(M), Converges):
            return M
        y = next(chain_points(M))
        return Restrict(M, y, True)
    if isinstance(fam, SplitCantorCanonical):
        if isinstance(M, Naturals):
            return Affine(Siblings(ONES, 1), 4, 0)
        if isinstance(M, Affine) and M.a == 4 and M.b < 4 and isinstance(M.inner, Naturals):
            # cut points 1^k 0^inf climbing to 1^inf
            return Affine(Siblings(ONES, 1), 4, M.b)
        if isinstance(_decide_split(M), Converges):
            return M
        return split_strands(M)[0].expr()
    raise Undecidable("undecidable presentation")


# ---------------------------------------------------------------------------
# tree representation of a family of convergent codes


@dataclass(frozen=True)
class LabeledTree:
    """Nodes are pairs (bits, witness) of equal-length sequences, stored
    paired into one sequence; ``labels`` maps a node to the index ``n_t``
    whose function ``f_{n_t}`` sits there."""

    tree: tr.FinTree
    labels: dict = field(compare=False)
    pairs: dict = field(compare=False)


def _label(bits: tuple) -> int:
    members = [n for n, b in enumerate(bits) if b]
    return members[-1] if members else 0


def tree_representation(seq: DenseSequence, codes, depth: int) -> LabeledTree:
    """Unfold the characteristic functions of the codes to the given depth.

    Every code is paired with the constant witness 0, so codes that agree
    on a prefix share those nodes.  A node whose bit part is ``chi|k`` is
    labelled with the largest member of the code below ``k`` (0 if none).
    """
    codes = list(codes)
    for L in codes:
        if not isinstance(decide_convergence(seq, L), Converges):
            raise ValueError("every code must index a convergent subsequence")
    nodes, labels, pairs = set(), {}, {}
    for L in codes:
        chi = tuple(1 if n in L else 0 for n in range(depth))
        for k in range(depth + 1):
            bits, wit = chi[:k], (0,) * k
            node = tr.pair_nodes(bits, wit)
            nodes.add(node)
            labels[node] = _label(bits)
            pairs[node] = (bits, wit)
    return LabeledTree(tr.FinTree(frozenset(nodes)), labels, pairs)


def branch_labels(rep: LabeledTree, leaf) -> list:
    """Labels along the path from the root to ``leaf``, repeats removed."""
    out: list = []
    for k in range(len(leaf) + 1):
        n = rep.labels[tuple(leaf[:k])]
        if not out or out[-1] != n:
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# sampling oracle


def sample_points(max_size: int = 6) -> list:
    """All canonical points with ``len(prefix) + len(period) <= max_size``."""
    seen = set()
    for total in range(1, max_size + 1):
        for plen in range(total):
            qlen = total - plen
            for p in range(1 << plen):
                pre = format(p, "b").zfill(plen) if plen else ""
                for q in range(1 << qlen):
                    seen.add(Point(pre, format(q, "b").zfill(qlen)))
    return sorted(seen, key=lambda x: (x.size, x.prefix, x.period))


@dataclass
class OracleReport:
    window: int
    unstable: list  # points where the tail of the window is not constant
    limits: dict  # point -> value the tail settled on


def sample_oracle(seq: DenseSequence, L: IndexSet, window: int = 50, max_size: int = 6) -> OracleReport:
    """Evaluate the sequence along L at every small point.

    For node indicators ``f_n(y)`` can only be non-zero when the word of ``n``
    is a prefix of ``y``, so the terms up to word length ``window`` are read
    off the prefixes of ``y``.  Other families use the first ``window`` terms.
    A point counts as settled when the last fifth of its values is constant.
    """
    tail = max(1, window // 5)
    if isinstance(seq, NodeIndicatorsByH):
        def values(y):
            out = []
            for k in range(window + 1):
                n = h_enum(y.word(k))
                out.append(seq[n].eval(y) if L.contains(n) else Fraction(0))
            return out
    else:
        fns = [seq[n] for n in islice(iter(L), window)]
        tail = max(1, len(fns) // 5)

        def values(y):
            return [f.eval(y) for f in fns]
    unstable, limits = [], {}
    for y in sample_points(max_size):
        last = values(y)[-tail:]
        if all(v == last[0] for v in last):
            limits[y] = last[0]
        else:
            unstable.append(y)
    return OracleReport(window, unstable, limits)


def oracle_disagreements(seq: DenseSequence, L: IndexSet, verdict: Verdict, window: int = 50,
                         max_size: int = 6) -> list:
    """Cross-check a verdict against direct evaluation; empty list means agreement."""
    problems = []
    if isinstance(verdict, Converges):
        rep = sample_oracle(seq, L, window, max_size)
        for y in rep.unstable:
            problems.append(("unstable", y))
        for y, v in rep.limits.items():
            if v != verdict.limit.eval(y):
                problems.append(("limit", y, v))
    else:
        z = verdict.witness
        lo = [seq[n].eval(z) for n in islice(iter(verdict.sub_lo), window)]
        hi = [seq[n].eval(z) for n in islice(iter(verdict.sub_hi), window)]
        if len(lo) < window or len(hi) < window:
            problems.append(("short", len(lo), len(hi)))
        if lo and hi and not min(hi) - max(lo) > verdict.theta:
            problems.append(("gap", max(lo), min(hi)))
    return problems
