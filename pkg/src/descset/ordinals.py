"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
decreasing exponents, each exponent itself an :class:`Ordinal`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Union

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "UNBOUNDED",
    "ord_compare",
    "ord_add",
    "ord_sup_plus_one",
    "fundamental",
    "as_ordinal",
    "ord_sub_left",
]


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise ValueError(f"coefficient must be a positive integer, got {coeff!r}")
            if prev is not None and _cmp(exp, prev) >= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp

    # construction ------------------------------------------------------
    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("negative ordinal")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_power(cls, exp: "Ordinal | int", coeff: int = 1) -> "Ordinal":
        return cls(((as_ordinal(exp), coeff),))

    # predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def predecessor(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        *head, (exp, c) = self.terms
        if c > 1:
            head.append((exp, c - 1))
        return Ordinal(tuple(head))

    # order and arithmetic ---------------------------------------------
    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _cmp(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self == Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ord_add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ord_add(other, self)

    def mul_nat(self, n: int) -> "Ordinal":
        """Right multiplication by a natural number, ``self * n``."""
        if n < 0:
            raise ValueError("negative multiplier")
        if n == 0 or self.is_zero():
            return ZERO
        (exp, c), rest = self.terms[0], self.terms[1:]
        return Ordinal(((exp, c * n),) + rest)

    # rendering ---------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Ordinal({to_text(self)})"


def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def _coerce(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return Ordinal.of(x)
    return NotImplemented


def as_ordinal(x: Union[Ordinal, int]) -> Ordinal:
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"not an ordinal: {x!r}")
    return y


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


class _Unbounded:
    """Stand-in for omega_1. Only divergence detectors return it."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "UNBOUNDED"

    __str__ = __repr__


UNBOUNDED = _Unbounded()


def ord_compare(a: Ordinal, b: Ordinal) -> str:
    c = _cmp(as_ordinal(a), as_ordinal(b))
    return "less" if c < 0 else "greater" if c > 0 else "equal"


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if b.is_zero():
        return a
    lead, lead_c = b.terms[0]
    kept = []
    for exp, c in a.terms:
        k = _cmp(exp, lead)
        if k > 0:
            kept.append((exp, c))
        elif k == 0:
            kept.append((exp, c + lead_c))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def ord_sup_plus_one(items: Iterable[Ordinal]) -> Ordinal:
    items = [as_ordinal(x) for x in items]
    if not items:
        raise ValueError("empty supremum")
    return ord_add(max(items), ONE)


def ord_max(items: Iterable[Ordinal], default: Ordinal = ZERO) -> Ordinal:
    best = default
    for x in items:
        if x > best:
            best = x
    return best


def ord_sub_left(t: Ordinal, a: Ordinal) -> Ordinal:
    """The unique ``x`` with ``t + x == a``, or zero when ``t >= a``."""
    t, a = as_ordinal(t), as_ordinal(a)
    if _cmp(t, a) >= 0:
        return ZERO
    for i, (ea, ca) in enumerate(a.terms):
        if i >= len(t.terms):
            return Ordinal(a.terms[i:])
        et, ct = t.terms[i]
        if (et, ct) == (ea, ca):
            continue
        if et == ea:
            head = ((ea, ca - ct),) if ca > ct else ()
            return Ordinal(head + a.terms[i + 1:])
        return Ordinal(a.terms[i:])
    return ZERO


def fundamental(lam: Ordinal, n: int) -> Ordinal:
    """The n-th element of the standard fundamental sequence of a limit ordinal."""
    if not lam.is_limit():
        raise ValueError(f"{lam} is not a limit ordinal")
    *head, (exp, c) = lam.terms
    if c > 1:
        head.append((exp, c - 1))
    base = Ordinal(tuple(head))
    if exp.is_successor():
        return ord_add(base, Ordinal.omega_power(exp.predecessor()).mul_nat(n)) if n else base
    return ord_add(base, Ordinal.omega_power(fundamental(exp, n)))


# text form ---------------------------------------------------------------

def to_text(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exp, c in a.terms:
        if exp.is_zero():
            parts.append(str(c))
        else:
            parts.append(f"w^{{{to_text(exp)}}}*{c}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(w\^\{|\}|\*|\+|\d+)")


def from_text(text: str) -> Ordinal:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad ordinal text at {pos}: {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    val, i = _parse_sum(tokens, 0)
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return val


def _parse_sum(tokens, i):
    terms = []
    while True:
        if i >= len(tokens):
            raise ValueError("unexpected end of ordinal text")
        tok = tokens[i]
        if tok == "w^{":
            exp, i = _parse_sum(tokens, i + 1)
            if tokens[i : i + 2] != ["}", "*"]:
                raise ValueError("expected '}*'")
            coeff = int(tokens[i + 2])
            i += 3
            terms.append((exp, coeff))
        elif tok.isdigit():
            n = int(tok)
            i += 1
            if n:
                terms.append((ZERO, n))
        else:
            raise ValueError(f"unexpected token {tok!r}")
        if i < len(tokens) and tokens[i] == "+":
            i += 1
            continue
        return Ordinal(tuple(terms)), i


# JSON form: 0 | [[exponent, coefficient], ...] ----------------------------

def to_json(a: Ordinal):
    if a.is_zero():
        return 0
    return [[to_json(e), c] for e, c in a.terms]


def from_json(obj) -> Ordinal:
    if obj == 0 and not isinstance(obj, bool):
        return ZERO
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"bad ordinal JSON: {obj!r}")
    terms = []
    for item in obj:
        if not isinstance(item, list) or len(item) != 2:
            raise ValueError(f"bad ordinal term: {item!r}")
        terms.append((from_json(item[0]), int(item[1])))
    return Ordinal(tuple(terms))
