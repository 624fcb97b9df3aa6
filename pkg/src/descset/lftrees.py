"""Trees whose well-foundedness encodes convergence of a subsequence.

Balls are cylinders: ``B_n = [h_inv(n)]`` with diameter ``2^-len``.  A node
of ``T^d_L`` is a triple ``(s, t, w)``: increasing indices from ``L``,
increasing finite blocks from ``L`` and an acceptable sequence of balls,
such that on each ball every ``f_{n_i}`` is pushed more than ``1/(d+1)``
away by some member of the matching block.  ``S^d_L`` drops the blocks
and measures the distance to a fixed function ``f`` instead.

These trees are infinite, so every finite claim here is relative to
``Caps``: which elements of ``L`` and which blocks and balls are allowed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice
from typing import Iterator, Optional

from . import trees as tr
from .cantor import Cylinder, IndexSet, Point, h_enum, h_inv
from .catalog import DenseSequence, Region, SymbolicFn, Const, NodeInd, Zero, diff_region
from .convergence import Converges, Diverges, decide_convergence, decide_convergence_to
from .ordinals import Ordinal, ord_sup_plus_one

# ---------------------------------------------------------------------------
# balls and acceptable sequences


def ball(n: int) -> Cylinder:
    return Cylinder(h_inv(n))


def _fits_depth(word: str, i: int) -> bool:
    # diam 2^-len <= 1/(i+1)
    return (1 << len(word)) >= i + 1


def is_acceptable(w) -> bool:
    words = [h_inv(l) for l in w]
    for i, u in enumerate(words):
        if not _fits_depth(u, i):
            return False
        if i and not u.startswith(words[i - 1]):
            return False
    return True


def threshold(d: int) -> Fraction:
    if d < 0:
        raise ValueError("d must be a natural number")
    return Fraction(1, d + 1)


# ---------------------------------------------------------------------------
# nodes


@dataclass(frozen=True)
class TNode:
    s: tuple = ()
    t: tuple = ()
    w: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(frozenset(F) for F in self.t))
        object.__setattr__(self, "w", tuple(self.w))

    def __len__(self):
        return len(self.s)

    def prefix(self, k: int) -> "TNode":
        return TNode(self.s[:k], self.t[:k], self.w[:k])


@dataclass(frozen=True)
class SNode:
    s: tuple = ()
    w: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "w", tuple(self.w))

    def __len__(self):
        return len(self.s)

    def prefix(self, k: int) -> "SNode":
        return SNode(self.s[:k], self.w[:k])


def _check_increasing(s):
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError("index sequence must be strictly increasing")


def _check_shape_t(node: TNode):
    if not (len(node.s) == len(node.t) == len(node.w)):
        raise ValueError("s, t and w must have equal length")
    _check_increasing(node.s)
    for F in node.t:
        if not F:
            raise ValueError("blocks must be non-empty")
    for F, G in zip(node.t, node.t[1:]):
        if not max(F) < min(G):
            raise ValueError("blocks must satisfy F < G")


def _check_shape_s(node: SNode):
    if len(node.s) != len(node.w):
        raise ValueError("s and w must have equal length")
    _check_increasing(node.s)


def block_covers(seq: DenseSequence, n: int, F, word: str, theta: Fraction) -> bool:
    """Every z in [word] has some m in F with |f_n(z) - f_m(z)| > theta."""
    region = Region.empty()
    for m in F:
        region = region | _diff(seq, n, m, theta)
    return Region.cylinder(word).subset(region)


@lru_cache(maxsize=200_000)
def _diff(seq, n, m, theta) -> Region:
    return diff_region(seq[n], seq[m], theta)


@lru_cache(maxsize=200_000)
def _diff_f(seq, n, f, theta) -> Region:
    return diff_region(seq[n], f, theta)


def tdl_member(seq: DenseSequence, L: IndexSet, d: int, node: TNode) -> bool:
    _check_shape_t(node)
    theta = threshold(d)
    if not all(n in L for n in node.s) or not all(m in L for F in node.t for m in F):
        return False
    if not is_acceptable(node.w):
        return False
    return all(
        block_covers(seq, n, F, h_inv(l), theta) for n, F, l in zip(node.s, node.t, node.w)
    )


def sdl_member(seq: DenseSequence, L: IndexSet, f: SymbolicFn, d: int, node: SNode) -> bool:
    _check_shape_s(node)
    theta = threshold(d)
    if not all(n in L for n in node.s) or not is_acceptable(node.w):
        return False
    return all(
        Region.cylinder(h_inv(l)).subset(_diff_f(seq, n, f, theta))
        for n, l in zip(node.s, node.w)
    )


def glued_member(kind: str, seq: DenseSequence, L: IndexSet, node, f: Optional[SymbolicFn] = None) -> bool:
    """Membership in the glued tree: the first coordinate names ``d``."""
    if len(node) == 0:
        return True
    if kind == "T":
        d = node.s[0]
        if node.t[0] != frozenset([d]) or node.w[0] != d:
            raise ValueError("leading coordinates must all name the same d")
        rest = TNode(node.s[1:], node.t[1:], node.w[1:])
        return tdl_member(seq, L, d, rest)
    if kind == "S":
        if f is None:
            raise ValueError("S trees need a target function")
        d = node.s[0]
        if node.w[0] != d:
            raise ValueError("leading coordinates must all name the same d")
        return sdl_member(seq, L, f, d, SNode(node.s[1:], node.w[1:]))
    raise ValueError(f"kind must be T or S, got {kind!r}")


# ---------------------------------------------------------------------------
# truncations


@dataclass(frozen=True)
class Caps:
    """``n_l``: indices come from the first n_l elements of L.  ``block_pool``:
    blocks are drawn from the first block_pool elements, with at most
    ``block_size`` members.  ``max_word``: longest ball word.  ``depth``:
    longest node."""

    n_l: int = 16
    max_word: int = 8
    depth: int = 5
    block_pool: Optional[int] = None
    block_size: int = 2
    d_range: tuple = (0, 1, 2, 3, 4)

    def __post_init__(self):
        if min(self.n_l, self.max_word, self.block_size) <= 0 or self.depth < 0:
            raise ValueError("caps must be positive")

    @property
    def pool(self) -> int:
        return self.block_pool if self.block_pool is not None else self.n_l

    def doubled(self) -> "Caps":
        return Caps(2 * self.n_l, self.max_word, self.depth, 2 * self.pool, self.block_size, self.d_range)


def _extensions(word: str, min_len: int, max_len: int) -> Iterator[str]:
    """Words extending ``word`` with length in [min_len, max_len], shortest first."""
    frontier = [word]
    length = len(word)
    while length <= max_len:
        if length >= min_len:
            yield from frontier
        frontier = [u + b for u in frontier for b in "01"]
        length += 1


class _Window:
    """The finite window of a tree of kind T or S under fixed caps."""

    def __init__(self, kind, seq, L, d, caps: Caps, f=None):
        if kind not in ("T", "S"):
            raise ValueError("kind must be T or S")
        if kind == "S" and f is None:
            raise ValueError("S trees need a target function")
        self.kind, self.seq, self.L, self.d, self.caps, self.f = kind, seq, L, d, caps, f
        self.theta = threshold(d)
        self.indices = L.first(caps.n_l)
        self.pool = L.first(caps.pool)
        blocks = []
        for size in range(1, caps.block_size + 1):
            blocks.extend(frozenset(c) for c in combinations(self.pool, size))
        self.blocks = sorted(blocks, key=lambda F: (max(F), sorted(F)))
        self._valid: dict = {}
        self._ok: dict = {}

    def ball_ok(self, n: int, word: str) -> bool:
        """For S: the ball lies where f_n is far from f."""
        key = (n, word)
        hit = self._ok.get(key)
        if hit is None:
            hit = Region.cylinder(word).subset(_diff_f(self.seq, n, self.f, self.theta))
            self._ok[key] = hit
        return hit

    def valid_blocks(self, n: int, word: str) -> list:
        """Blocks covering the ball for ``n``, least maximum first."""
        key = (n, word)
        hit = self._valid.get(key)
        if hit is not None:
            return hit
        cyl = Region.cylinder(word)
        # the part of the ball each single m leaves uncovered
        left = {m: cyl.minus(_diff(self.seq, n, m, self.theta)) for m in self.pool}
        out = []
        for F in self.blocks:
            if len(F) == 1:
                ok = left[next(iter(F))].is_empty()
            elif len(F) == 2:
                a, b = sorted(F)
                ok = left[a].subset(_diff(self.seq, n, b, self.theta))
            else:
                ok = block_covers(self.seq, n, F, word, self.theta)
            if ok:
                out.append(F)
        self._valid[key] = out
        return out

    def best_block(self, n: int, word: str, lower: int) -> Optional[frozenset]:
        """For T: the covering block above ``lower`` with the least maximum."""
        return next((F for F in self.valid_blocks(n, word) if min(F) > lower), None)

    def steps(self, i: int, last_n: int, lower: int, word: str):
        """Admissible next coordinates ``(n, F, ball word)`` at position i."""
        for n in self.indices:
            if n <= last_n:
                continue
            for u in _extensions(word, _min_len(i), self.caps.max_word):
                if self.kind == "S":
                    if self.ball_ok(n, u):
                        yield n, None, u
                else:
                    F = self.best_block(n, u, lower)
                    if F is not None:
                        yield n, F, u

    def all_steps(self, i: int, last_n: int, lower: int, word: str):
        """Like ``steps`` but with every admissible block, for explicit trees."""
        for n in self.indices:
            if n <= last_n:
                continue
            for u in _extensions(word, _min_len(i), self.caps.max_word):
                if self.kind == "S":
                    if self.ball_ok(n, u):
                        yield n, None, u
                    continue
                for F in self.valid_blocks(n, u):
                    if min(F) > lower:
                        yield n, F, u


def _min_len(i: int) -> int:
    return max(0, (i).bit_length())  # least length with 2^len >= i + 1


def truncation_height(kind, seq, L, d, caps: Caps, f=None) -> int:
    """Longest member node within the caps (at most ``caps.depth``).

    Among blocks only the one with the least maximum needs trying: any
    continuation of a larger block also continues the smaller one.
    """
    win = _Window(kind, seq, L, d, caps, f)
    memo: dict = {}

    def longest(i, last_n, lower, word):
        if i >= caps.depth:
            return 0
        key = (i, last_n, lower, word)
        if key in memo:
            return memo[key]
        best = 0
        for n, F, u in win.steps(i, last_n, lower, word):
            nxt = lower if F is None else max(F)
            best = max(best, 1 + longest(i + 1, n, nxt, u))
            if best == caps.depth - i:
                break
        memo[key] = best
        return best

    return longest(0, -1, -1, "")


def truncation_rank(kind, seq, L, d, caps: Caps, f=None) -> Ordinal:
    """Rank of the finite window: longest node length plus one."""
    return Ordinal.of(truncation_height(kind, seq, L, d, caps, f) + 1)


def encode_t(n: int, F, l: int) -> int:
    mask = 0 if F is None else sum(1 << m for m in F)
    return tr.pair(n, tr.pair(mask, l))


def decode_t(z: int) -> tuple:
    n, rest = tr.unpair(z)
    mask, l = tr.unpair(rest)
    F = frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)
    return n, F, l


def encode_s(n: int, l: int) -> int:
    return tr.pair(n, l)


def truncate_tree(kind, seq, L, d, caps: Caps, f=None, max_nodes: int = 50_000) -> tr.FinTree:
    """All member nodes of length <= caps.depth within the caps, explicitly."""
    win = _Window(kind, seq, L, d, caps, f)
    nodes = {()}
    stack = [((), 0, -1, -1, "")]
    while stack:
        node, i, last_n, lower, word = stack.pop()
        if i >= caps.depth:
            continue
        for n, F, u in win.all_steps(i, last_n, lower, word):
            sym = encode_s(n, h_enum(u)) if kind == "S" else encode_t(n, F, h_enum(u))
            child = node + (sym,)
            nodes.add(child)
            if len(nodes) > max_nodes:
                raise ValueError("caps: node limit exceeded; shrink the caps")
            stack.append((child, i + 1, n, lower if F is None else max(F), u))
    return tr.FinTree(frozenset(nodes))


def glued_rank(kind, seq, L, caps: Caps, f=None) -> Ordinal:
    """Rank of the glued window: one more than the largest per-d rank."""
    return ord_sup_plus_one(truncation_rank(kind, seq, L, d, caps, f) for d in caps.d_range)


def glued_truncate(kind, seq, L, caps: Caps, f=None, max_nodes: int = 50_000) -> tr.FinTree:
    nodes = {()}
    for d in caps.d_range:
        head = encode_t(d, frozenset([d]), d) if kind == "T" else encode_s(d, d)
        for node in truncate_tree(kind, seq, L, d, caps, f, max_nodes).nodes:
            nodes.add((head,) + node)
    return tr.FinTree(frozenset(nodes))


# ---------------------------------------------------------------------------
# infinite branch from a divergence


def branch_witness(seq: DenseSequence, L: IndexSet, d: int = 1, max_word: int = 4096) -> Iterator[TNode]:
    """Nodes of ``T^d_L`` of lengths 0, 1, 2, ..., each extending the last.

    The k-th coordinate pairs the k-th elements of the two separated
    subsequences with the smallest ball around the witness, no larger than
    the previous one and of length at least k, on which they stay apart.
    """
    verdict = decide_convergence(seq, L)
    if not isinstance(verdict, Diverges):
        raise ValueError("the subsequence converges; there is no branch")
    theta = threshold(d)
    if not verdict.theta >= theta and not _gap_exceeds(seq, verdict, theta):
        raise ValueError(f"gap at the witness does not exceed 1/{d + 1}")
    x = verdict.witness
    hi, lo = iter(verdict.sub_hi), iter(verdict.sub_lo)
    node = TNode()
    yield node
    j = 0
    for k in range(10 ** 9):
        n, m = next(hi), next(lo)
        if n <= (node.s[-1] if node.s else -1):
            # keep s increasing: skip ahead in sub_hi
            while n <= node.s[-1]:
                n = next(hi)
        if node.t and m <= max(node.t[-1]):
            while m <= max(node.t[-1]):
                m = next(lo)
        region = _diff(seq, n, m, theta)
        j = max(j, k, _min_len(k))
        while not Region.cylinder(x.word(j)).subset(region):
            j += 1
            if j > max_word:
                raise ValueError("no ball around the witness separates the pair")
        node = TNode(node.s + (n,), node.t + (frozenset([m]),), node.w + (h_enum(x.word(j)),))
        yield node


def _gap_exceeds(seq, verdict: Diverges, theta: Fraction) -> bool:
    z = verdict.witness
    a = [seq[n].eval(z) for n in islice(iter(verdict.sub_hi), 8)]
    b = [seq[n].eval(z) for n in islice(iter(verdict.sub_lo), 8)]
    return min(a) - max(b) > theta


def witness_in_caps(seq, L, d, caps: Caps) -> TNode:
    """The branch witness of length ``caps.depth``, checked against the caps."""
    node = list(islice(branch_witness(seq, L, d), caps.depth + 1))[-1]
    pool_idx = set(L.first(caps.n_l))
    blocks = set(L.first(caps.pool))
    if (not set(node.s) <= pool_idx or not all(F <= blocks for F in node.t)
            or any(len(h_inv(l)) > caps.max_word for l in node.w)):
        raise ValueError("caps: the witness branch leaves the window")
    return node


# ---------------------------------------------------------------------------
# monotone map from S^d_L into T^d_L


CONTINUOUS = (Zero, Const, NodeInd)


@dataclass
class MonotoneResult:
    s_tree: tr.FinTree
    t_image: tr.FinTree
    mapping: dict  # encoded S node -> encoded T node
    blocks: dict  # SNode -> tuple of blocks
    s_rank: Ordinal = field(default=None)
    t_rank: Ordinal = field(default=None)


def _cover_block(seq, L: IndexSet, n: int, word: str, theta: Fraction, above: int,
                 f: SymbolicFn, search: int, max_split: int) -> frozenset:
    """Split [word] into cylinders, each handled by one m in L above ``above``."""
    source = islice((m for m in L if m > above), search)
    seen: list = []

    def candidates():
        # pull elements of L only as far as the search needs them
        yield from seen
        for m in source:
            seen.append(m)
            yield m

    chosen = set()
    stack = [word]
    while stack:
        v = stack.pop()
        cyl = Region.cylinder(v)
        for m in candidates():
            if cyl.subset(_diff(seq, n, m, theta)):
                chosen.add(m)
                break
        else:
            if len(v) >= len(word) + max_split:
                raise ValueError("no finite cover found; is L convergent to f?")
            stack.extend([v + "0", v + "1"])
    return frozenset(chosen)


def newp3_monotone(seq: DenseSequence, L: IndexSet, f: SymbolicFn, d: int, caps: Caps,
                   search: int = 64, max_split: int = 12) -> MonotoneResult:
    """Build the block map on the window of ``S^d_L`` and lift it into ``T^d_L``.

    Children are processed after their parents; each new block draws its
    members above every member used so far on the path.
    """
    if not isinstance(f, CONTINUOUS):
        raise ValueError("target function must be continuous (Zero, Const or NodeInd)")
    if not decide_convergence_to(seq, L, f):
        raise ValueError("L does not index a subsequence converging to f")
    theta = threshold(d)
    s_tree = truncate_tree("S", seq, L, d, caps, f)
    blocks = {(): ()}
    mapping = {}
    for node in s_tree:  # sorted by length, so parents come first
        if node:
            parent = blocks[node[:-1]]
            n, l = tr.unpair(node[-1])
            p = max((max(F) for F in parent), default=-1)
            F = _cover_block(seq, L, n, h_inv(l), theta, p, f, search, max_split)
            blocks[node] = parent + (F,)
        syms = []
        for z, F in zip(node, blocks[node]):
            n, l = tr.unpair(z)
            syms.append(encode_t(n, F, l))
        mapping[node] = tuple(syms)
    image = tr.FinTree(frozenset(mapping.values()))
    return MonotoneResult(s_tree, image, mapping, blocks)


def decode_s_node(node) -> SNode:
    pairs = [tr.unpair(z) for z in node]
    return SNode(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def decode_t_node(node) -> TNode:
    parts = [decode_t(z) for z in node]
    return TNode(tuple(p[0] for p in parts), tuple(p[1] for p in parts), tuple(p[2] for p in parts))
