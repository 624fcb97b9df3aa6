"""Downward-closed trees: explicit finite trees and finitely presented schemas.

Nodes are tuples of non-negative integers.  ``FinTree`` holds an explicit
node set; the schema classes (``Empty``, ``Single``, ``Chain``, ``Stem``,
``Join``, ``OmegaJoin``, ``FullBranch``) describe possibly infinite trees by
structure, so rank and well-foundedness are read off the expression.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional, Union

from .ordinals import ONE, OMEGA, ZERO, Ordinal, ord_add, ord_max

Node = tuple


class NotWellFounded(ValueError):
    pass


# ---------------------------------------------------------------------------
# explicit finite trees

@dataclass(frozen=True)
class FinTree:
    nodes: frozenset = frozenset()

    def __post_init__(self):
        nodes = frozenset(tuple(n) for n in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        for n in nodes:
            if n and n[:-1] not in nodes:
                raise ValueError(f"not downward closed: {n} present, {n[:-1]} missing")

    @classmethod
    def from_nodes(cls, nodes) -> "FinTree":
        return cls(frozenset(tuple(n) for n in nodes))

    @classmethod
    def closure(cls, nodes) -> "FinTree":
        """Smallest tree containing the given nodes."""
        out = set()
        for n in nodes:
            n = tuple(n)
            out.update(n[:k] for k in range(len(n) + 1))
        return cls(frozenset(out))

    def __contains__(self, node) -> bool:
        return tuple(node) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes, key=lambda n: (len(n), n)))

    def children(self, node: Node) -> list:
        k = len(node)
        return sorted(n for n in self.nodes if len(n) == k + 1 and n[:k] == node)

    def height(self) -> int:
        return max((len(n) + 1 for n in self.nodes), default=0)


def is_prefix(s: Node, t: Node) -> bool:
    """``s`` is an initial segment of ``t`` (not necessarily proper)."""
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def is_proper_prefix(s: Node, t: Node) -> bool:
    return len(s) < len(t) and tuple(t[: len(s)]) == tuple(s)


def derivative(T: FinTree) -> FinTree:
    # every proper prefix of a node is a node, so the non-leaves are exactly these
    return FinTree(frozenset(n[:-1] for n in T.nodes if n))


def rank(T: FinTree) -> Ordinal:
    """Number of derivative steps until the tree is empty."""
    steps = 0
    while T.nodes:
        T = derivative(T)
        steps += 1
    return Ordinal.of(steps)


# ---------------------------------------------------------------------------
# schemas

class Schema:
    """Base class for finitely presented trees."""

    def child(self, i: int) -> Optional["Schema"]:
        """Subtree below child ``(i)``; ``None`` when that child is absent."""
        raise NotImplementedError

    def child_indices(self, bound: int) -> list:
        return [i for i in range(bound) if self.child(i) is not None]

    @property
    def empty(self) -> bool:
        return False


@dataclass(frozen=True)
class Empty(Schema):
    @property
    def empty(self) -> bool:
        return True

    def child(self, i):
        return None


@dataclass(frozen=True)
class Single(Schema):
    def child(self, i):
        return None


@dataclass(frozen=True)
class Chain(Schema):
    """A path with ``k`` nodes: (), (0,), (0, 0), ..."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("chain length must be non-negative")

    @property
    def empty(self):
        return self.k == 0

    def child(self, i):
        return Chain(self.k - 1) if i == 0 and self.k >= 2 else None


@dataclass(frozen=True)
class Stem(Schema):
    """``k`` extra nodes stacked on top of ``base``: Join applied k times."""

    k: int
    base: Schema

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("stem length must be non-negative")
        if self.base.empty:
            raise ValueError("stem base must be non-empty")

    def child(self, i):
        if self.k == 0:
            return self.base.child(i)
        if i != 0:
            return None
        return Stem(self.k - 1, self.base) if self.k > 1 else self.base


@dataclass(frozen=True)
class Join(Schema):
    """Root whose child ``(i)`` carries ``parts[i]``; empty parts leave no child."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def child(self, i):
        if 0 <= i < len(self.parts) and not self.parts[i].empty:
            return self.parts[i]
        return None


@dataclass(frozen=True)
class FullBranch(Schema):
    """The single infinite branch (), (0,), (0, 0), ..."""

    def child(self, i):
        return self if i == 0 else None


# rules for OmegaJoin: closed-form maps n -> Schema

@dataclass(frozen=True)
class ChainRule:
    """n -> Chain(a*n + b)."""

    a: int
    b: int

    def __call__(self, n: int) -> Schema:
        return Chain(self.a * n + self.b)


@dataclass(frozen=True)
class StemRule:
    """n -> Stem(a*n + b, base): the base grafted under a path of affine length."""

    a: int
    b: int
    base: Schema

    def __call__(self, n: int) -> Schema:
        return Stem(self.a * n + self.b, self.base)


@dataclass(frozen=True)
class ConstRule:
    schema: Schema

    def __call__(self, n: int) -> Schema:
        return self.schema


Rule = Union[ChainRule, StemRule, ConstRule]


@dataclass(frozen=True)
class OmegaJoin(Schema):
    """Root with child ``(n)`` carrying ``rule(n)`` for every natural ``n``."""

    rule: Rule

    def child(self, i):
        if i < 0:
            return None
        sub = self.rule(i)
        return None if sub.empty else sub


def _rule_parts(rule: Rule) -> list:
    if isinstance(rule, StemRule):
        return [rule.base]
    if isinstance(rule, ConstRule):
        return [rule.schema]
    return []


def subschemas(T: Schema) -> list:
    """Schemas syntactically nested one level inside ``T``."""
    if isinstance(T, Join):
        return list(T.parts)
    if isinstance(T, Stem):
        return [T.base]
    if isinstance(T, OmegaJoin):
        return _rule_parts(T.rule)
    return []


def contains_full_branch(T: Schema) -> bool:
    if isinstance(T, FullBranch):
        return True
    return any(contains_full_branch(s) for s in subschemas(T))


def is_wellfounded(T: Schema) -> bool:
    return not contains_full_branch(T)


def _omega_has_infinitely_many_children(rule: Rule) -> bool:
    if isinstance(rule, ChainRule):
        return rule.a > 0 or rule.b > 0
    if isinstance(rule, StemRule):
        return True
    return not rule.schema.empty


def has_infinite_fan(T: Schema) -> bool:
    """Some node of the denotation has infinitely many children."""
    if isinstance(T, OmegaJoin) and _omega_has_infinitely_many_children(T.rule):
        return True
    return any(has_infinite_fan(s) for s in subschemas(T))


def is_infinite(T: Schema) -> bool:
    return contains_full_branch(T) or has_infinite_fan(T)


def node_rank(T: Schema) -> Ordinal:
    """Rank of the root: sup over children of (child rank + 1)."""
    if T.empty:
        raise ValueError("empty schema has no root")
    if contains_full_branch(T):
        raise NotWellFounded("not well-founded")
    if isinstance(T, Single):
        return ZERO
    if isinstance(T, Chain):
        return Ordinal.of(T.k - 1)
    if isinstance(T, Stem):
        return ord_add(node_rank(T.base), Ordinal.of(T.k))
    if isinstance(T, Join):
        return ord_max(ord_add(node_rank(p), ONE) for p in T.parts if not p.empty)
    if isinstance(T, OmegaJoin):
        rule = T.rule
        if isinstance(rule, ChainRule):
            if rule.a > 0:
                return OMEGA
            return Ordinal.of(rule.b)  # Chain(b) has root rank b-1; empty when b == 0
        if isinstance(rule, StemRule):
            base = node_rank(rule.base)
            if rule.a > 0:
                return ord_add(base, OMEGA)
            return ord_add(base, Ordinal.of(rule.b + 1))
        if rule.schema.empty:
            return ZERO
        return ord_add(node_rank(rule.schema), ONE)
    raise TypeError(f"unknown schema {T!r}")


def schema_rank(T: Schema) -> Ordinal:
    """Order of the denoted tree: root rank + 1, or 0 for the empty tree."""
    if T.empty:
        return ZERO
    return ord_add(node_rank(T), ONE)


def subschema_at(T: Schema, node: Node) -> Optional[Schema]:
    cur = T
    if cur.empty:
        return None
    for i in node:
        cur = cur.child(i)
        if cur is None:
            return None
    return cur


def schema_contains(T: Schema, node: Node) -> bool:
    return subschema_at(T, node) is not None


def schema_nodes(T: Schema, depth: int, width: int) -> Iterator[Node]:
    """Nodes of length <= depth whose entries are all < width, in DFS order."""
    if T.empty:
        return
    stack = [((), T)]
    while stack:
        node, sub = stack.pop()
        yield node
        if len(node) < depth:
            for i in reversed(sub.child_indices(width)):
                stack.append((node + (i,), sub.child(i)))


def truncate(T: Schema, depth: int, width: int) -> FinTree:
    return FinTree(frozenset(schema_nodes(T, depth, width)))


def iter_branch_starts(T: Schema) -> Iterator[Node]:
    """Nodes where a FullBranch begins; each infinite branch is such a node + 0^inf.

    The generator is infinite when an OmegaJoin repeats an ill-founded child.
    """
    if T.empty:
        return
    stack = [((), T)]
    while stack:
        node, sub = stack.pop()
        if isinstance(sub, FullBranch):
            yield node
        elif isinstance(sub, Stem):
            if contains_full_branch(sub.base):
                stack.append((node + (0,) * sub.k, sub.base))
        elif isinstance(sub, Join):
            for i in reversed(range(len(sub.parts))):
                if contains_full_branch(sub.parts[i]):
                    stack.append((node + (i,), sub.parts[i]))
        elif isinstance(sub, OmegaJoin):
            parts = _rule_parts(sub.rule)
            if parts and contains_full_branch(parts[0]):
                yield from _omega_branch_starts(node, sub)


def _omega_branch_starts(node, sub) -> Iterator[Node]:
    i = 0
    while True:
        c = sub.child(i)
        if c is not None:
            yield from iter_branch_starts_at(node + (i,), c)
        i += 1


def iter_branch_starts_at(prefix: Node, T: Schema) -> Iterator[Node]:
    for n in iter_branch_starts(T):
        yield prefix + n


def branch_paths(T: Schema, limit: int = 2) -> tuple:
    """Up to ``limit`` branch starts, and whether more branches exist."""
    got = list(islice(iter_branch_starts(T), limit + 1))
    return tuple(got[:limit]), len(got) > limit


def konig_branch(T: Schema, depth: int) -> Node:
    """Node of the given length lying on an infinite branch of ``T``.

    The choice is deterministic (always the least ill-founded child), so
    calls with increasing ``depth`` return extensions of each other.
    """
    if not contains_full_branch(T):
        raise NotWellFounded("no infinite branch")
    node: list = []
    cur = T
    while len(node) < depth:
        if isinstance(cur, FullBranch):
            node.append(0)
            continue
        i = 0
        while True:
            c = cur.child(i)
            if c is not None and contains_full_branch(c):
                break
            i += 1
        node.append(i)
        cur = c
    return tuple(node)


# ---------------------------------------------------------------------------
# monotone maps

def verify_monotone(m: dict, S: FinTree, T: FinTree) -> bool:
    if set(m) != set(S.nodes):
        raise ValueError("map domain must equal the nodes of S")
    if any(v not in T.nodes for v in m.values()):
        raise ValueError("map range must lie in T")
    for s in S.nodes:
        for t in S.nodes:
            if is_proper_prefix(s, t) and not is_proper_prefix(m[s], m[t]):
                return False
    return True


def find_monotone_map(S: FinTree, T: FinTree) -> Optional[dict]:
    """Exhaustive backtracking search for a strictly monotone map S -> T.

    Checking parent/child edges suffices because strict extension is
    transitive.  Returns ``None`` iff no such map exists.
    """
    order = sorted(S.nodes, key=lambda n: (len(n), n))
    if not order:
        return {}
    targets = sorted(T.nodes, key=lambda n: (len(n), n))
    if not targets:
        return None
    extensions = {t: [u for u in targets if is_proper_prefix(t, u)] for t in targets}
    assign: dict = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        s = order[i]
        cands = targets if not s else extensions[assign[s[:-1]]]
        for c in cands:
            assign[s] = c
            if place(i + 1):
                return True
        assign.pop(s, None)
        return False

    return dict(assign) if place(0) else None


# ---------------------------------------------------------------------------
# integer pairing, for trees over product alphabets

def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple:
    w = int(((8 * z + 1) ** 0.5 - 1) // 2)
    while (w + 1) * (w + 2) // 2 <= z:
        w += 1
    while w * (w + 1) // 2 > z:
        w -= 1
    b = z - w * (w + 1) // 2
    return w - b, b


def pair_nodes(*components) -> Node:
    """Identify a tuple of equal-length sequences with one sequence of paired symbols."""
    lengths = {len(c) for c in components}
    if len(lengths) > 1:
        raise ValueError("components must have equal length")
    out = []
    for symbols in zip(*components):
        z = symbols[-1]
        for s in reversed(symbols[:-1]):
            z = pair(s, z)
        out.append(z)
    return tuple(out)


def first(it, n):
    return list(islice(it, n))
