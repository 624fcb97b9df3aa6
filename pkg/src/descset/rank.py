"""Separation rank of step functions on structured countable compacta.

A presentation is a labelled countable compact subset of Cantor space.
``Leaf(v)`` is a single point with value ``v``.  ``Apex(v, attachments)``
is a point with value ``v`` together with, for each attachment, an
omega-sequence of copies converging to it.

Placement is fixed: the presentation at address ``w`` has its apex at
``w1^inf``, and copy position ``k`` sits in the cylinder ``[w 1^k 0]``.
With ``m`` attachments, copy ``n`` of attachment ``i`` takes position
``k = n*m + i``.  Positions below ``skip`` are left out, which is how a
presentation is restricted to a cylinder around its apex.

For ``A = {f < a}`` and ``B = {f > b}`` the derivative is
``F' = cl(F & A) & cl(F & B)``.  The profile of a presentation records how
long its apex survives and when the iterates stop meeting ``A``, ``B``
and the whole set; it is computed by recursion on the presentation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .cantor import Cylinder, Point
from .ordinals import (
    ONE,
    ZERO,
    Ordinal,
    as_ordinal,
    fundamental,
    ord_add,
    ord_max,
    ord_sub_left,
)

DEFAULT_A = Fraction(1, 3)
DEFAULT_B = Fraction(2, 3)
PATTERN_VALUES = {"A1": Fraction(0), "A2": Fraction(1), "A3": Fraction(1, 2)}


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Leaf:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Repeat:
    """Every copy is ``shape``."""

    shape: "Presentation"

    def copy(self, n: int) -> "Presentation":
        return self.shape


@dataclass(frozen=True)
class Cycle:
    """Copy ``n`` is ``shapes[n % len(shapes)]``."""

    shapes: tuple

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))
        if not self.shapes:
            raise ValueError("cycle needs at least one shape")

    def copy(self, n):
        return self.shapes[n % len(self.shapes)]


@dataclass(frozen=True)
class Ramp:
    """Copy ``n`` is ``build_rank_example(limit[n] + 1, pattern)``: ranks climbing to ``limit``."""

    limit: Ordinal
    pattern: str

    def __post_init__(self):
        if not as_ordinal(self.limit).is_limit():
            raise ValueError("ramp limit must be a limit ordinal")
        if self.pattern not in PATTERN_VALUES:
            raise ValueError(f"unknown pattern {self.pattern!r}")

    def copy(self, n):
        return build_rank_example(ord_add(fundamental(self.limit, n), ONE), self.pattern)


CopyRule = Union[Repeat, Cycle, Ramp]


@dataclass(frozen=True)
class Apex:
    value: Fraction
    attachments: tuple
    skip: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "attachments", tuple(self.attachments))
        if not self.attachments:
            raise ValueError("an apex needs at least one attachment; use Leaf")
        if self.skip < 0:
            raise ValueError("skip must be non-negative")

    def position(self, k: int) -> Optional["Presentation"]:
        if k < self.skip:
            return None
        n, i = divmod(k, len(self.attachments))
        return self.attachments[i].copy(n)


Presentation = Union[Leaf, Apex]


# ---------------------------------------------------------------------------
# profile


@dataclass(frozen=True)
class Profile:
    """``survive``: derivatives the apex survives.  ``meets_a``/``meets_b``:
    least stage whose iterate misses A (resp. B).  ``alpha``: least stage
    whose iterate is empty."""

    survive: Ordinal
    meets_a: Ordinal
    meets_b: Ordinal
    alpha: Ordinal


def _check_pair(a, b) -> tuple:
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError("need a < b")
    return a, b


def _rule_sup(rule: CopyRule, a, b) -> tuple:
    """(alpha, meets_a, meets_b) suprema over the copies.

    For every rule here the supremum over any tail of copies equals the
    supremum over all of them, so it also gives the limsup.
    """
    if isinstance(rule, Ramp):
        lam = as_ordinal(rule.limit)
        return lam, lam, lam
    shapes = [rule.shape] if isinstance(rule, Repeat) else list(rule.shapes)
    profs = [profile(s, a, b) for s in shapes]
    return (
        ord_max(p.alpha for p in profs),
        ord_max(p.meets_a for p in profs),
        ord_max(p.meets_b for p in profs),
    )


def profile(P: Presentation, a=DEFAULT_A, b=DEFAULT_B) -> Profile:
    a, b = _check_pair(a, b)
    return _profile(P, a, b)


_cache: dict = {}


def _profile(P, a, b) -> Profile:
    key = (P, a, b)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    in_a, in_b = P.value < a, P.value > b
    if isinstance(P, Leaf):
        out = Profile(ZERO, ONE if in_a else ZERO, ONE if in_b else ZERO, ONE)
    else:
        sups = [_rule_sup(r, a, b) for r in P.attachments]
        sup_alpha = ord_max(s[0] for s in sups)
        lim_a = ord_max(s[1] for s in sups)
        lim_b = ord_max(s[2] for s in sups)
        if in_a:
            survive = lim_b
        elif in_b:
            survive = lim_a
        else:
            survive = min(lim_a, lim_b)
        after = ord_add(survive, ONE)
        out = Profile(
            survive,
            ord_max([after if in_a else ZERO, lim_a]),
            ord_max([after if in_b else ZERO, lim_b]),
            ord_max([after, sup_alpha]),
        )
    if len(_cache) > 100_000:
        _cache.clear()
    _cache[key] = out
    return out


# ---------------------------------------------------------------------------
# derivatives


@dataclass(frozen=True)
class Derived:
    """The ``stage``-th iterated derivative of ``base`` for the pair (a, b).

    It denotes the points of ``base`` whose own apex survives ``stage``
    steps; since each copy is clopen, survival is a local property.
    """

    base: Presentation
    a: Fraction
    b: Fraction
    stage: Ordinal = field(default=ONE)

    def contains(self, x: Point) -> bool:
        sub = locate(self.base, x)
        return sub is not None and profile(sub, self.a, self.b).survive >= self.stage

    def is_empty(self) -> bool:
        return alpha_on(self) == ZERO


Compact = Union[Leaf, Apex, Derived]


def sep_derivative(K: Compact, a=DEFAULT_A, b=DEFAULT_B) -> Derived:
    a, b = _check_pair(a, b)
    if isinstance(K, Derived):
        if (K.a, K.b) != (a, b):
            raise ValueError("iterated derivatives must use one pair (a, b)")
        return Derived(K.base, a, b, ord_add(K.stage, ONE))
    return Derived(K, a, b, ONE)


def iterate_derivative(K: Presentation, stage, a=DEFAULT_A, b=DEFAULT_B) -> Derived:
    a, b = _check_pair(a, b)
    return Derived(K, a, b, as_ordinal(stage))


def alpha_on(K: Compact, a=DEFAULT_A, b=DEFAULT_B) -> Ordinal:
    """Least number of derivatives after which the set is empty."""
    if isinstance(K, Derived):
        return ord_sub_left(K.stage, profile(K.base, K.a, K.b).alpha)
    return profile(K, a, b).alpha


def values_of(P: Presentation) -> set:
    out: set = set()
    _collect_values(P, out, set())
    return out


def _collect_values(P, out, seen):
    if P in seen:
        return
    seen.add(P)
    out.add(P.value)
    if isinstance(P, Apex):
        for r in P.attachments:
            if isinstance(r, Ramp):
                out.update(PATTERN_VALUES.values())
            elif isinstance(r, Repeat):
                _collect_values(r.shape, out, seen)
            else:
                for s in r.shapes:
                    _collect_values(s, out, seen)


def crossing_pairs(values) -> list:
    """Rational pairs (a, b) realising every split of the values into below-a / above-b."""
    vs = sorted(set(Fraction(v) for v in values))
    if not vs:
        raise ValueError("no values")
    if len(vs) == 1:
        return [(vs[0] - Fraction(1, 3), vs[0] + Fraction(1, 3))]
    gap = min(y - x for x, y in zip(vs, vs[1:])) / 3
    return [(vs[i] + gap, vs[j] - gap) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def alpha_full(K: Presentation, pairs=None) -> Ordinal:
    """Maximum of ``alpha_on`` over the pairs (default: all crossing pairs)."""
    if pairs is None:
        pairs = crossing_pairs(values_of(K))
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty pair list")
    return ord_max(alpha_on(K, a, b) for a, b in pairs)


# ---------------------------------------------------------------------------
# addresses, restriction to cylinders


def apex_point(address: str) -> Point:
    return Point(address, "1")


def _split_address(rest: str) -> tuple:
    """``1^k 0 tail`` -> (k, tail); ``1^k`` -> (k, None)."""
    k = len(rest) - len(rest.lstrip("1"))
    if k == len(rest):
        return k, None
    return k, rest[k + 1:]


def address_of(x: Point) -> Optional[str]:
    """Apex points are exactly the ``w1^inf`` with ``w`` empty or ending in 0."""
    if x.period != "1":
        return None
    return x.prefix


def subpresentation(P: Presentation, address: str) -> Optional[Presentation]:
    cur, rest = P, address
    while rest:
        if isinstance(cur, Leaf):
            return None
        k, tail = _split_address(rest)
        if tail is None:
            return None
        cur = cur.position(k)
        if cur is None:
            return None
        rest = tail
    return cur


def locate(P: Presentation, x: Point) -> Optional[Presentation]:
    """The sub-presentation whose apex is ``x``, if ``x`` is in the compactum."""
    addr = address_of(x)
    return None if addr is None else subpresentation(P, addr)


def restrict(P: Presentation, word: str) -> Optional[tuple]:
    """``P`` intersected with the cylinder ``[word]``.

    Returns ``(address, presentation)``: the intersection is the
    presentation placed at that address.  ``None`` if the intersection is
    empty.
    """
    cur, rest, at = P, word, ""
    while True:
        if not rest:
            return at, cur
        k, tail = _split_address(rest)
        if tail is None:
            # rest = 1^k: keep the apex and the copies from position k on
            if isinstance(cur, Leaf):
                return at, cur
            return at, Apex(cur.value, cur.attachments, max(cur.skip, k))
        if isinstance(cur, Leaf):
            return None
        nxt = cur.position(k)
        if nxt is None:
            return None
        cur, rest, at = nxt, tail, at + "1" * k + "0"


def restrict_ball(K: Presentation, a, b, cyl: Cylinder, xi, x: Point) -> bool:
    """Whether ``x`` survives ``xi`` derivatives of ``K`` intersected with ``[cyl]``."""
    a, b = _check_pair(a, b)
    if locate(K, x) is None:
        raise ValueError(f"{x} is not a point of the compactum")
    if not cyl.contains(x):
        raise ValueError(f"{x} is not in the cylinder [{cyl.word}]")
    at, R = restrict(K, cyl.word)
    sub = subpresentation(R, x.prefix[len(at):])
    return profile(sub, a, b).survive >= as_ordinal(xi)


# ---------------------------------------------------------------------------
# generator


def build_rank_example(xi, pattern: str = "A1", a=DEFAULT_A, b=DEFAULT_B) -> Presentation:
    """A presentation with ``alpha_on == xi``; the apex value follows ``pattern``.

    A1 puts the apex below ``a`` and hangs copies above ``b``, A2 the
    reverse, A3 puts the apex in between and hangs both kinds.
    """
    xi = as_ordinal(xi)
    a, b = _check_pair(a, b)
    if (a, b) != (DEFAULT_A, DEFAULT_B):
        if not (Fraction(0) < a and b < Fraction(1) and a <= Fraction(1, 2) <= b):
            raise ValueError("pattern values 0, 1/2, 1 must straddle the pair")
    if pattern not in PATTERN_VALUES:
        raise ValueError(f"unknown pattern {pattern!r}")
    if not xi.is_successor():
        raise ValueError("not attainable on a compactum")
    value = PATTERN_VALUES[pattern]
    zeta = xi.predecessor()
    if zeta.is_zero():
        return Leaf(value)
    partners = {"A1": ["A2"], "A2": ["A1"], "A3": ["A1", "A2"]}[pattern]
    if zeta.is_limit():
        rules = [Ramp(zeta, p) for p in partners]
    else:
        rules = [Repeat(build_rank_example(zeta, p)) for p in partners]
    return Apex(value, tuple(rules))


def attaining_copy(K: Presentation, a=DEFAULT_A, b=DEFAULT_B, search: int = 8) -> Optional[tuple]:
    """For ``alpha_on(K) = zeta + 1`` with ``zeta`` a successor: a copy position
    whose compactum has rank at least ``zeta``.  Returns ``(k, rank)``."""
    a, b = _check_pair(a, b)
    alpha = profile(K, a, b).alpha
    if not alpha.is_successor() or isinstance(K, Leaf):
        return None
    zeta = alpha.predecessor()
    if not zeta.is_successor():
        return None
    for k in range(K.skip, K.skip + search * len(K.attachments)):
        r = profile(K.position(k), a, b).alpha
        if r >= zeta:
            return k, r
    return None


# ---------------------------------------------------------------------------
# several components


@dataclass(frozen=True)
class MultiComponent:
    """Countably many disjoint Cantor components; from ``len(components)`` on,
    every component carries ``default``."""

    components: tuple
    default: Optional[Presentation] = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def component(self, i: int) -> Optional[Presentation]:
        return self.components[i] if i < len(self.components) else self.default


def alpha_on_components(M: MultiComponent, indices, a=DEFAULT_A, b=DEFAULT_B) -> Ordinal:
    """Rank of the compactum made of the listed components (a finite union)."""
    return ord_max(
        alpha_on(c, a, b) for c in (M.component(i) for i in indices) if c is not None
    )


def alpha_on_space(M: MultiComponent, a=DEFAULT_A, b=DEFAULT_B) -> Ordinal:
    """Supremum over compacta of the space: past the declared bound the
    components repeat, so finitely many unions decide it."""
    return alpha_on_components(M, range(len(M.components) + 1), a, b)


# ---------------------------------------------------------------------------
# brute-force oracle on finite instantiations


@dataclass(frozen=True)
class SamplePoint:
    """An instantiated point; ``radius`` is the prefix length within which a
    nearby point counts as converging to it (``None`` for isolated points)."""

    point: Point
    value: Fraction
    radius: Optional[int]


def _period_of(rule: CopyRule) -> int:
    return len(rule.shapes) if isinstance(rule, Cycle) else 1


def instantiate(K: Presentation, depth: int) -> list:
    """Keep the first ``depth`` copies of every attachment, recursively."""
    out: list = []
    stack = [(K, "")]
    while stack:
        P, w = stack.pop()
        if isinstance(P, Leaf):
            out.append(SamplePoint(apex_point(w), P.value, None))
            continue
        m = len(P.attachments)
        period = max(_period_of(r) for r in P.attachments)
        if depth < period:
            raise ValueError("instantiation depth below the copy period")
        # the last `period` copies of each attachment stand for the tail
        last = P.skip + depth * m
        out.append(SamplePoint(apex_point(w), P.value, len(w) + last - period * m))
        for k in range(P.skip, last):
            stack.append((P.position(k), w + "1" * k + "0"))
    return out


def _common_prefix(u: str, v: str) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def brute_force_alpha(sample: list, a, b, precision: int = 64) -> int:
    """Iterate the set derivative on explicit points until empty."""
    a, b = _check_pair(a, b)
    words = [s.point.word(precision) for s in sample]
    if len(set(words)) != len(words):
        raise ValueError("precision")
    if any(s.radius is not None and s.radius > precision for s in sample):
        raise ValueError("precision")
    current = set(range(len(sample)))
    steps = 0
    while current:
        A = {i for i in current if sample[i].value < a}
        B = {i for i in current if sample[i].value > b}

        def in_closure(i: int, S: set) -> bool:
            if i in S:
                return True
            r = sample[i].radius
            if r is None:
                return False
            return any(_common_prefix(words[i], words[j]) >= r for j in S if j != i)

        current = {i for i in current if in_closure(i, A) and in_closure(i, B)}
        steps += 1
    return steps
