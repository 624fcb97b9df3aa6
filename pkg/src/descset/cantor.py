"""Symbolic Cantor space.

Points are eventually periodic bit sequences ``prefix + period^inf``, words
are ``str`` over ``"01"``, cylinders and clopen sets are built from words,
and ``IndexSet`` expressions denote finitely presented subsets of N.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import count, islice
from math import gcd
from typing import Iterator, Optional

from . import trees as tr


class Undecidable(ValueError):
    """Raised for presentations outside the decidable grammar."""


# ---------------------------------------------------------------------------
# points

def _check_bits(s: str) -> str:
    if not isinstance(s, str) or s.strip("01"):
        raise ValueError(f"not a bit string: {s!r}")
    return s


def _min_period(p: str) -> str:
    n = len(p)
    for d in range(1, n + 1):
        if n % d == 0 and p[:d] * (n // d) == p:
            return p[:d]
    return p


@dataclass(frozen=True, order=False)
class Point:
    """The sequence ``prefix`` followed by ``period`` repeated forever."""

    prefix: str = ""
    period: str = "0"

    def __post_init__(self):
        prefix, period = _check_bits(self.prefix), _check_bits(self.period)
        if not period:
            raise ValueError("period must be non-empty")
        period = _min_period(period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def parse(cls, text: str) -> "Point":
        """``"01(10)"`` style: bits, then the period in parentheses."""
        if "(" not in text or not text.endswith(")"):
            raise ValueError(f"expected prefix(period), got {text!r}")
        pre, per = text[:-1].split("(", 1)
        return cls(pre, per)

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return int(self.prefix[i])
        return int(self.period[(i - len(self.prefix)) % len(self.period)])

    def word(self, n: int) -> str:
        """The first ``n`` bits."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        m = n - len(self.prefix)
        reps = -(-m // len(self.period))
        return self.prefix + (self.period * reps)[:m]

    def bits(self) -> Iterator[int]:
        for i in count():
            yield self.bit(i)

    @property
    def size(self) -> int:
        return len(self.prefix) + len(self.period)

    def is_eventually_constant(self) -> bool:
        return self.period in ("0", "1")

    def starts_with(self, w: str) -> bool:
        return self.word(len(w)) == w

    def __str__(self):
        return f"{self.prefix}({self.period})"

    def __repr__(self):
        return f"Point({self.prefix!r}, {self.period!r})"


ZEROS = Point("", "0")
ONES = Point("", "1")


def _horizon(x: Point, y: Point) -> int:
    a, b = len(x.period), len(y.period)
    return max(len(x.prefix), len(y.prefix)) + a * b // gcd(a, b)


def first_difference(x: Point, y: Point) -> Optional[int]:
    """Index of the first disagreement, ``None`` when the points are equal."""
    if x == y:
        return None
    n = _horizon(x, y) + 1
    u, v = x.word(n), y.word(n)
    for i in range(n):
        if u[i] != v[i]:
            return i
    raise AssertionError("unequal canonical points must differ within the horizon")


def lex_compare(x: Point, y: Point) -> str:
    if x == y:
        return "equal"
    n = _horizon(x, y) + 1
    u, v = x.word(n), y.word(n)
    return "less" if u < v else "greater"


def lex_lt(x: Point, y: Point) -> bool:
    return lex_compare(x, y) == "less"


def lex_le(x: Point, y: Point) -> bool:
    return lex_compare(x, y) != "greater"


def successor(x: Point) -> Optional[Point]:
    """The immediate lexicographic successor, which exists only for w01^inf."""
    if x.period == "1" and x.prefix.endswith("0"):
        return Point(x.prefix[:-1] + "1", "0")
    return None


def predecessor(x: Point) -> Optional[Point]:
    if x.period == "0" and x.prefix.endswith("1"):
        return Point(x.prefix[:-1] + "0", "1")
    return None


# ---------------------------------------------------------------------------
# cylinders and the clopen algebra

@dataclass(frozen=True)
class Cylinder:
    word: str = ""

    def __post_init__(self):
        _check_bits(self.word)

    def contains(self, x: Point) -> bool:
        return x.starts_with(self.word)

    @property
    def lo(self) -> Point:
        return Point(self.word, "0")

    @property
    def hi(self) -> Point:
        return Point(self.word, "1")


def _canonical_antichain(words) -> frozenset:
    ws = set(words)
    # drop words extending another word
    ws = {w for w in ws if not any(v != w and w.startswith(v) for v in ws)}
    merged = True
    while merged:
        merged = False
        for w in sorted(ws, key=len, reverse=True):
            if w and w[:-1] + ("1" if w[-1] == "0" else "0") in ws:
                ws.discard(w[:-1] + "0")
                ws.discard(w[:-1] + "1")
                ws.add(w[:-1])
                ws = {v for v in ws if v == w[:-1] or not v.startswith(w[:-1])}
                merged = True
                break
    return frozenset(ws)


@dataclass(frozen=True)
class ClopenSet:
    words: frozenset = frozenset()

    def __post_init__(self):
        for w in self.words:
            _check_bits(w)
        object.__setattr__(self, "words", _canonical_antichain(self.words))

    @classmethod
    def of(cls, *words: str) -> "ClopenSet":
        return cls(frozenset(words))

    @classmethod
    def whole(cls) -> "ClopenSet":
        return cls(frozenset([""]))

    def contains(self, x: Point) -> bool:
        return any(x.starts_with(w) for w in self.words)

    def is_empty(self) -> bool:
        return not self.words

    def union(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.words | other.words)

    def intersect(self, other: "ClopenSet") -> "ClopenSet":
        out = set()
        for u in self.words:
            for v in other.words:
                if v.startswith(u):
                    out.add(v)
                elif u.startswith(v):
                    out.add(u)
        return ClopenSet(frozenset(out))

    def complement(self) -> "ClopenSet":
        return ClopenSet(frozenset(_complement(sorted(self.words), "")))

    def subset(self, other: "ClopenSet") -> bool:
        return self.intersect(other.complement()).is_empty()

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersect(other)

    def __invert__(self):
        return self.complement()

    def sorted_words(self) -> list:
        return sorted(self.words, key=lambda w: (len(w), w))


def _complement(words: list, at: str) -> list:
    # complement of the union of [w] within [at]
    relevant = [w for w in words if w.startswith(at) or at.startswith(w)]
    if not relevant:
        return [at]
    if any(at.startswith(w) for w in relevant):
        return []
    return _complement(relevant, at + "0") + _complement(relevant, at + "1")


# ---------------------------------------------------------------------------
# the node enumeration h: length first, then lexicographic

def h_enum(s: str) -> int:
    _check_bits(s)
    return (1 << len(s)) - 1 + (int(s, 2) if s else 0)


def h_inv(n: int) -> str:
    if n < 0:
        raise ValueError("negative index")
    length = (n + 1).bit_length() - 1
    r = n + 1 - (1 << length)
    return format(r, "b").zfill(length) if length else ""


# trees on N are carried into 2^{<N} by (n_0, ..., n_k) -> 1^n_0 0 ... 1^n_k 0

def encode_node(t) -> str:
    return "".join("1" * n + "0" for n in t)


def decode_word(w: str) -> Optional[tuple]:
    if w and not w.endswith("0"):
        return None
    return tuple(len(part) for part in w.split("0")[:-1]) if w else ()


def _decode_stream(bits: Iterator[int]) -> Iterator[int]:
    run = 0
    for b in bits:
        if b:
            run += 1
        else:
            yield run
            run = 0


def branch_point(stem) -> Point:
    """The point of Cantor space coding the branch ``stem + 0^inf``."""
    return Point(encode_node(stem), "0")


def schema_has_branch_at(T: tr.Schema, y: Point) -> bool:
    """Whether ``y`` codes an infinite branch of the schema ``T``."""
    # branches of schemas end in 0-symbols, each coded by a single 0 bit
    if y.period != "0" or T.empty:
        return False
    head = list(_decode_stream(int(c) for c in y.prefix + "0"))
    cur = T
    for pos, sym in enumerate(head):
        if isinstance(cur, tr.FullBranch):
            return all(s == 0 for s in head[pos:])
        cur = cur.child(sym)
        if cur is None:
            return False
    while not isinstance(cur, tr.FullBranch):
        cur = cur.child(0)
        if cur is None:
            return False
    return True


# ---------------------------------------------------------------------------
# index sets: finitely presented subsets of N
#
# Most forms are read through h, so an element n stands for the word h_inv(n).

class IndexSet:
    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        return n >= 0 and self.contains(n)

    def _iter(self) -> Iterator[int]:
        raise NotImplementedError

    def __iter__(self) -> Iterator[int]:
        return self._iter()

    def is_infinite(self) -> bool:
        return _offchain_infinite(self, frozenset())

    def first(self, n: int) -> list:
        return list(islice(self._iter(), n))

    def kth(self, k: int) -> int:
        """The k-th element in increasing order (0-based)."""
        if k < 0:
            raise IndexError("negative position")
        for i, n in enumerate(self._iter()):
            if i == k:
                return n
        raise IndexError(f"index set exhausted before position {k}")

    def size_hint(self) -> int:
        """Crude structural size, used to bound scans of finite filtered sets."""
        return 1


@dataclass(frozen=True)
class Finite(IndexSet):
    values: tuple

    def __post_init__(self):
        vals = tuple(sorted(set(int(v) for v in self.values)))
        if vals and vals[0] < 0:
            raise ValueError("index sets hold natural numbers")
        object.__setattr__(self, "values", vals)

    def contains(self, n):
        return n in self.values

    def _iter(self):
        return iter(self.values)

    def size_hint(self):
        return max((len(h_inv(v)) for v in self.values), default=0) + 1


@dataclass(frozen=True)
class Naturals(IndexSet):
    def contains(self, n):
        return n >= 0

    def _iter(self):
        return count()


def _schema_size(T: tr.Schema) -> int:
    if isinstance(T, tr.Chain):
        return T.k + 1
    if isinstance(T, tr.Stem):
        return T.k + 1 + _schema_size(T.base)
    if isinstance(T, tr.Join):
        return len(T.parts) + 1 + sum(_schema_size(p) for p in T.parts)
    if isinstance(T, tr.OmegaJoin):
        r = T.rule
        extra = sum(_schema_size(p) for p in tr.subschemas(T))
        return 2 + extra + (r.a + r.b if isinstance(r, (tr.ChainRule, tr.StemRule)) else 0)
    return 1


def _words_of_length(T: tr.Schema, ell: int) -> Iterator[str]:
    if ell == 0:
        yield ""
        return
    for i in range(ell):
        c = T.child(i)
        if c is not None:
            head = "1" * i + "0"
            for rest in _words_of_length(c, ell - i - 1):
                yield head + rest


def _all_subschemas(T: tr.Schema) -> list:
    out = [T]
    for s in tr.subschemas(T):
        out.extend(_all_subschemas(s))
    return out


def _max_code_length(T: tr.Schema) -> int:
    # only called on finite schemas, whose children all have small indices
    width = 1 + max((len(S.parts) for S in _all_subschemas(T) if isinstance(S, tr.Join)), default=1)
    best = 0
    stack = [(T, 0)]
    while stack:
        sub, ell = stack.pop()
        best = max(best, ell)
        for i in sub.child_indices(width):
            stack.append((sub.child(i), ell + i + 1))
    return best


@dataclass(frozen=True)
class NodeSet(IndexSet):
    """``{h(e(t)) : t in T}``: the nodes of a schema carried into 2^{<N}."""

    tree: tr.Schema

    def contains(self, n):
        t = decode_word(h_inv(n))
        return t is not None and tr.schema_contains(self.tree, t)

    def _iter(self):
        if self.tree.empty:
            return
        limit = None if tr.is_infinite(self.tree) else _max_code_length(self.tree)
        for ell in count():
            if limit is not None and ell > limit:
                return
            for w in sorted(_words_of_length(self.tree, ell)):
                yield h_enum(w)

    def size_hint(self):
        return _schema_size(self.tree)


def _flip(b: int) -> str:
    return "0" if b else "1"


@dataclass(frozen=True)
class Siblings(IndexSet):
    """``{h(x|k + (1 - x(k)))}``, optionally only where ``x(k) == bit``."""

    point: Point
    bit: Optional[int] = None

    def __post_init__(self):
        if self.bit not in (None, 0, 1):
            raise ValueError("bit must be 0, 1 or None")

    def _keeps(self, k: int) -> bool:
        return self.bit is None or self.point.bit(k) == self.bit

    def contains(self, n):
        w = h_inv(n)
        if not w:
            return False
        k = len(w) - 1
        return (w[:k] == self.point.word(k) and int(w[k]) != self.point.bit(k)
                and self._keeps(k))

    def _finite_bound(self) -> Optional[int]:
        if self.bit is not None and str(self.bit) not in self.point.period:
            return len(self.point.prefix)
        return None

    def _iter(self):
        stop = self._finite_bound()
        for k in count():
            if stop is not None and k >= stop:
                return
            if self._keeps(k):
                yield h_enum(self.point.word(k) + _flip(self.point.bit(k)))

    def size_hint(self):
        return self.point.size + 1


@dataclass(frozen=True)
class Affine(IndexSet):
    """``{a*n + b : n in inner}``."""

    inner: IndexSet
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("affine coefficients must be natural numbers")

    def contains(self, n):
        if self.a == 0:
            return n == self.b and next(iter(self.inner), None) is not None
        q, r = divmod(n - self.b, self.a)
        return r == 0 and q >= 0 and q in self.inner

    def _iter(self):
        if self.a == 0:
            if next(iter(self.inner), None) is not None:
                yield self.b
            return
        for n in self.inner:
            yield self.a * n + self.b

    def size_hint(self):
        return self.inner.size_hint()


@dataclass(frozen=True)
class Union(IndexSet):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def contains(self, n):
        return any(n in p for p in self.parts)

    def _iter(self):
        last = None
        for n in heapq.merge(*(iter(p) for p in self.parts)):
            if n != last:
                yield n
                last = n

    def size_hint(self):
        return sum(p.size_hint() for p in self.parts) + 1


class _Filter(IndexSet):
    """Forms that keep part of an inner set."""

    inner: IndexSet

    def _keeps(self, n: int) -> bool:
        raise NotImplementedError

    def contains(self, n):
        return n in self.inner and self._keeps(n)

    def _scan_cap(self) -> Optional[int]:
        # a finite result drawn from an infinite inner set: all its words are
        # no longer than a bound polynomial in the structural size
        if self.inner.is_infinite() and not self.is_infinite():
            s = self.size_hint()
            return 2 * (s + 1) * (s + 2) + 16
        return None

    def _iter(self):
        cap = self._scan_cap()
        for n in self.inner:
            if cap is not None and len(h_inv(n)) > cap:
                return
            if self._keeps(n):
                yield n

    def size_hint(self):
        return self.inner.size_hint() + 1


@dataclass(frozen=True)
class Restrict(_Filter):
    """Keep the words that are (``inside``) or are not prefixes of ``point``."""

    inner: IndexSet
    point: Point
    inside: bool = True

    def _keeps(self, n):
        return self.point.starts_with(h_inv(n)) == self.inside

    def _iter(self):
        if not self.inside:
            return super()._iter()
        return self._walk_prefixes()

    def _walk_prefixes(self):
        # the prefixes of the point, in increasing order, kept when in inner
        cap = None if self.is_infinite() else 2 * (self.size_hint() + 1) * (self.size_hint() + 2) + 16
        for k in count():
            if cap is not None and k > cap:
                return
            n = h_enum(self.point.word(k))
            if n in self.inner:
                yield n

    def size_hint(self):
        return self.inner.size_hint() + self.point.size + 1


@dataclass(frozen=True)
class LongWords(_Filter):
    inner: IndexSet
    min_len: int

    def _keeps(self, n):
        return len(h_inv(n)) >= self.min_len


@dataclass(frozen=True)
class Above(_Filter):
    inner: IndexSet
    bound: int

    def _keeps(self, n):
        return n > self.bound


@dataclass(frozen=True)
class Drop(IndexSet):
    """All but the first ``k`` elements of ``inner``."""

    inner: IndexSet
    k: int

    def contains(self, n):
        if n not in self.inner:
            return False
        below = 0
        for m in self.inner:
            if m >= n or below >= self.k:
                break
            below += 1
        return below >= self.k

    def _iter(self):
        return islice(iter(self.inner), self.k, None)

    def size_hint(self):
        return self.inner.size_hint()


# ---------------------------------------------------------------------------
# infinitude, decided from the expression

def infinitely_many_prefixes(W: IndexSet, y: Point) -> bool:
    """Whether infinitely many words of ``W`` are initial segments of ``y``."""
    if isinstance(W, (Finite, Siblings)):
        return False
    if isinstance(W, Naturals):
        return True
    if isinstance(W, NodeSet):
        return schema_has_branch_at(W.tree, y)
    if isinstance(W, Restrict):
        if (W.point == y) != W.inside:
            return False
        return infinitely_many_prefixes(W.inner, y)
    if isinstance(W, (LongWords, Above, Drop)):
        return infinitely_many_prefixes(W.inner, y)
    if isinstance(W, Union):
        return any(infinitely_many_prefixes(p, y) for p in W.parts)
    raise Undecidable(f"prefix structure of {type(W).__name__} is not read through h")


def _offchain_infinite(W: IndexSet, ys: frozenset) -> bool:
    """Whether ``W`` stays infinite after removing all prefixes of each ``y`` in ``ys``."""
    if isinstance(W, Finite):
        return False
    if isinstance(W, Naturals):
        return True
    if isinstance(W, Siblings):
        # an antichain meets each chain at most once
        return W._finite_bound() is None
    if isinstance(W, NodeSet):
        T = W.tree
        if T.empty:
            return False
        if tr.has_infinite_fan(T):
            return True
        starts = list(islice(tr.iter_branch_starts(T), len(ys) + 1))
        return any(branch_point(s) not in ys for s in starts)
    if isinstance(W, Restrict):
        if W.inside:
            return W.point not in ys and infinitely_many_prefixes(W.inner, W.point)
        return _offchain_infinite(W.inner, ys | {W.point})
    if isinstance(W, (LongWords, Above, Drop)):
        return _offchain_infinite(W.inner, ys)
    if isinstance(W, Union):
        return any(_offchain_infinite(p, ys) for p in W.parts)
    if isinstance(W, Affine):
        if ys:
            raise Undecidable("affine images are not read through h")
        return W.a > 0 and W.inner.is_infinite()
    raise Undecidable(f"unknown index set {type(W).__name__}")
