"""Seeded suites, one per acceptance criterion, with deterministic reports.

Each suite returns a ``SuiteResult`` whose ``cases`` are short text lines.
Nothing time- or machine-dependent goes into a report, so two runs with the
same seed print identical bytes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, takewhile

from . import trees as tr
from .cantor import (
    ONES,
    ZEROS,
    Affine,
    ClopenSet,
    Cylinder,
    Naturals,
    NodeSet,
    Point,
    Restrict,
    Siblings,
    Union,
)
from .catalog import NodeIndicatorsByH, Region, SplitCantorCanonical, Zero
from .convergence import decide_convergence, decide_convergence_to, oracle_disagreements
from .lftrees import Caps, branch_witness, newp3_monotone, tdl_member, truncation_height, truncation_rank
from .lftrees import decode_t_node
from .ordinals import OMEGA, Ordinal, to_text
from .rank import (
    Apex,
    Cycle,
    Leaf,
    Ramp,
    Repeat,
    alpha_on,
    apex_point,
    attaining_copy,
    brute_force_alpha,
    build_rank_example,
    instantiate,
    locate,
    profile,
    restrict_ball,
)
from .reductions import DecidablePointSet, h_image, verify_p1

DEFAULT_SEED = 20240611


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: list = field(default_factory=list)
    summary: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.summary}"


# ---------------------------------------------------------------------------
# generators


def random_fintree(r: random.Random, max_nodes: int) -> tr.FinTree:
    nodes = [()]
    kids: dict = {(): 0}
    for _ in range(r.randint(0, max_nodes - 1)):
        p = r.choice(nodes)
        child = p + (kids[p],)
        kids[p] += 1
        kids[child] = 0
        nodes.append(child)
    return tr.FinTree.from_nodes(nodes)


def _shape_to_tree(shape, prefix=()) -> list:
    out = [prefix]
    for i, sub in enumerate(shape):
        out.extend(_shape_to_tree(sub, prefix + (i,)))
    return out


def all_small_trees(max_nodes: int) -> list:
    """One tree per isomorphism type of rooted tree with at most ``max_nodes`` nodes."""
    by_size = {1: {()}}
    for n in range(2, max_nodes + 1):
        found = set()
        for shape in by_size[n - 1]:
            found.update(_add_leaf(shape))
        by_size[n] = found
    shapes = [s for n in sorted(by_size) for s in sorted(by_size[n], key=repr)]
    return [tr.FinTree.from_nodes(_shape_to_tree(s)) for s in shapes]


def _add_leaf(shape) -> set:
    out = {tuple(sorted(shape + ((),)))}
    for i, sub in enumerate(shape):
        for new in _add_leaf(sub):
            rest = shape[:i] + (new,) + shape[i + 1:]
            out.add(tuple(sorted(rest)))
    return out


VALUES = (Fraction(0), Fraction(1, 2), Fraction(1))
PAIRS = ((Fraction(1, 3), Fraction(2, 3)), (Fraction(1, 4), Fraction(3, 4)), (Fraction(1, 4), Fraction(3, 8)),
         (Fraction(5, 8), Fraction(3, 4)))


def random_presentation(r: random.Random, depth: int, ramps: bool = False):
    if depth == 0 or r.random() < 0.3:
        return Leaf(r.choice(VALUES))
    rules = []
    for _ in range(r.randint(1, 2)):
        u = r.random()
        if ramps and u < 0.15:
            rules.append(Ramp(r.choice([OMEGA, OMEGA.mul_nat(2)]), r.choice(["A1", "A2", "A3"])))
        elif u < 0.6:
            rules.append(Repeat(random_presentation(r, depth - 1, ramps)))
        else:
            rules.append(Cycle(tuple(random_presentation(r, depth - 1, ramps) for _ in range(r.randint(2, 3)))))
    return Apex(r.choice(VALUES), tuple(rules), r.randint(0, 1))


def _apex_addresses(K, r: random.Random, count: int) -> list:
    """Random apex addresses inside ``K``, following random copy positions."""
    out = []
    for _ in range(count):
        cur, addr = K, ""
        while isinstance(cur, Apex) and r.random() < 0.6:
            k = r.randint(cur.skip, cur.skip + 3)
            cur = cur.position(k)
            addr += "1" * k + "0"
        out.append(addr)
    return out


def random_point(r: random.Random, max_size: int = 6) -> Point:
    q = r.randint(1, max_size)
    p = r.randint(0, max_size - q)
    bits = lambda n: "".join(r.choice("01") for _ in range(n))
    return Point(bits(p), bits(q))


def random_clopen(r: random.Random) -> ClopenSet:
    words = ["".join(r.choice("01") for _ in range(r.randint(1, 3))) for _ in range(r.randint(1, 3))]
    return ClopenSet(frozenset(words))


def wellfounded_schemas() -> list:
    base = [
        tr.OmegaJoin(tr.ChainRule(1, 1)),
        tr.OmegaJoin(tr.ChainRule(2, 0)),
        tr.OmegaJoin(tr.ChainRule(0, 3)),
        tr.OmegaJoin(tr.ConstRule(tr.Single())),
        tr.OmegaJoin(tr.ConstRule(tr.Chain(2))),
        tr.OmegaJoin(tr.ConstRule(tr.OmegaJoin(tr.ChainRule(1, 1)))),
        tr.OmegaJoin(tr.StemRule(1, 1, tr.OmegaJoin(tr.ChainRule(1, 1)))),
        tr.OmegaJoin(tr.StemRule(1, 0, tr.OmegaJoin(tr.ChainRule(1, 1)))),
        tr.OmegaJoin(tr.ConstRule(tr.OmegaJoin(tr.StemRule(1, 1, tr.OmegaJoin(tr.ChainRule(1, 1)))))),
        tr.Stem(2, tr.OmegaJoin(tr.ChainRule(1, 1))),
        tr.Stem(3, tr.OmegaJoin(tr.ConstRule(tr.Chain(1)))),
        tr.Join((tr.Chain(3), tr.OmegaJoin(tr.ChainRule(1, 2)))),
        tr.Join((tr.OmegaJoin(tr.ChainRule(1, 1)), tr.OmegaJoin(tr.ConstRule(tr.Single())))),
    ]
    extra = [tr.Stem(k, s) for k, s in zip(range(1, 13), base[:12])]
    return (base + extra)[:25]


def illfounded_schemas() -> list:
    fb = tr.FullBranch()
    wf = wellfounded_schemas()
    out = [
        fb,
        tr.Stem(2, fb),
        tr.Join((fb, tr.Chain(3))),
        tr.OmegaJoin(tr.ConstRule(fb)),
        tr.OmegaJoin(tr.StemRule(1, 0, fb)),
    ]
    for i, w in enumerate(wf[:10]):
        out.append(tr.Join((w, tr.Stem(i % 3, fb))))
    for i, w in enumerate(wf[10:20]):
        out.append(tr.Stem(1 + i % 4, tr.Join((fb, w))))
    return out[:25]


def divergent_catalog() -> list:
    nodes, split = NodeIndicatorsByH(), SplitCantorCanonical()
    fb = tr.FullBranch()
    antichain = NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))
    return [
        (nodes, Naturals()),
        (nodes, NodeSet(tr.Join((fb, fb)))),
        (nodes, Union((NodeSet(fb), antichain))),
        (nodes, Union((NodeSet(tr.Stem(2, fb)), Siblings(ZEROS)))),
        (nodes, NodeSet(tr.Join((tr.Stem(1, fb), tr.OmegaJoin(tr.ChainRule(1, 1)))))),
        (split, h_image(Point("", "01"))),
        (split, h_image(Point("1", "011"))),
        (split, h_image(Point("", "001"))),
        (split, h_image(Point("00", "10"))),
        (split, Union((Affine(Siblings(Point("", "01"), 0), 4, 0), Affine(Siblings(Point("", "01"), 1), 4, 0)))),
    ]


def convergent_catalog() -> list:
    nodes, split = NodeIndicatorsByH(), SplitCantorCanonical()
    return [
        (nodes, Siblings(ZEROS)),
        (nodes, Siblings(Point("", "01"))),
        (nodes, NodeSet(tr.OmegaJoin(tr.ChainRule(1, 1)))),
        (nodes, NodeSet(tr.FullBranch())),
        (nodes, NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))),
        (split, Affine(Siblings(ONES, 1), 4, 0)),
        (split, h_image(ZEROS)),
        (split, h_image(Point("1", "0"))),
        (split, Affine(NodeSet(tr.FullBranch()), 4, 0)),
        (split, Affine(Siblings(ZEROS), 4, 3)),
    ]


def antichain_sets() -> list:
    return [
        Siblings(ZEROS),
        Siblings(ONES),
        Siblings(Point("", "01")),
        Siblings(Point("1", "0"), 0),
        NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single()))),
        Siblings(Point("", "011")),
        Siblings(Point("0", "1")),
    ]


# ---------------------------------------------------------------------------
# suites


def suite_monotone(samples: int = 200, seed: int = DEFAULT_SEED, exhaustive: int = 6) -> SuiteResult:
    r = random.Random(seed)
    cases, ok, found = [], True, 0
    for i in range(samples):
        S, T = random_fintree(r, 12), random_fintree(r, 12)
        m = tr.find_monotone_map(S, T)
        if m is not None:
            found += 1
            good = tr.verify_monotone(m, S, T) and tr.rank(S) <= tr.rank(T)
            ok &= good
            if not good:
                cases.append(f"random pair {i}: map found but rank({S.nodes}) > rank(T)")
    small = all_small_trees(exhaustive)
    agree = 0
    for S in small:
        for T in small:
            exists = tr.find_monotone_map(S, T) is not None
            expected = tr.rank(S) <= tr.rank(T)
            if exists == expected:
                agree += 1
            else:
                ok = False
                cases.append(f"exhaustive: sizes {len(S)},{len(T)} map={exists} ranks={tr.rank(S)},{tr.rank(T)}")
    cases.append(f"random pairs with a map: {found}/{samples}")
    cases.append(f"exhaustive pairs agreeing: {agree}/{len(small) ** 2} over {len(small)} shapes")
    return SuiteResult("monotone", ok, cases, f"{found} maps checked, {agree} exhaustive pairs agree")


def suite_alpha(samples: int = 100, seed: int = DEFAULT_SEED, depth: int = 3) -> SuiteResult:
    r = random.Random(seed)
    cases, ok, done = [], True, 0
    histogram: dict = {}
    while done < samples:
        K = random_presentation(r, 3)
        a, b = r.choice(PAIRS)
        al = alpha_on(K, a, b)
        if not al.is_finite() or int(al) > 6:
            continue
        bf = brute_force_alpha(instantiate(K, depth), a, b, precision=256)
        done += 1
        histogram[int(al)] = histogram.get(int(al), 0) + 1
        if bf != int(al):
            ok = False
            cases.append(f"case {done}: symbolic {al} != brute force {bf}")
    cases.append("alpha histogram: " + ", ".join(f"{k}:{v}" for k, v in sorted(histogram.items())))
    return SuiteResult("alpha-oracle", ok, cases, f"{done} presentations agree" if ok else "mismatch")


def suite_attain(samples: int = 100, seed: int = DEFAULT_SEED) -> SuiteResult:
    r = random.Random(seed)
    cases, ok = [], True
    examples = [build_rank_example(x, p) for x in (1, 2, 3, OMEGA + 1, OMEGA + 2, OMEGA.mul_nat(2) + 1)
                for p in ("A1", "A2", "A3")]
    pool = examples + [random_presentation(r, 3, ramps=True) for _ in range(samples)]
    exhibited = 0
    for i, K in enumerate(pool):
        a, b = PAIRS[0] if i < len(examples) else r.choice(PAIRS)
        al = alpha_on(K, a, b)
        if not (al.is_zero() or al.is_successor()):
            ok = False
            cases.append(f"presentation {i}: alpha {to_text(al)} is a limit")
            continue
        if al.is_successor() and isinstance(K, Apex) and al.predecessor().is_successor():
            hit = attaining_copy(K, a, b)
            if hit is None or hit[1] < al.predecessor():
                ok = False
                cases.append(f"presentation {i}: no copy attains {to_text(al.predecessor())}")
                continue
            exhibited += 1
    cases.append(f"attaining copies exhibited: {exhibited}")
    return SuiteResult("successor-attainment", ok, cases, f"{len(pool)} presentations, {exhibited} copies")


def suite_restrict(samples: int = 100, seed: int = DEFAULT_SEED, min_word: int = 6) -> SuiteResult:
    r = random.Random(seed)
    cases, ok, done, checks = [], True, 0, 0
    while done < samples:
        K = random_presentation(r, 3, ramps=True)
        a, b = r.choice(PAIRS)
        addr = _apex_addresses(K, r, 1)[0]
        x = apex_point(addr)
        surv = profile(locate(K, x), a, b).survive
        if surv.is_zero():
            xi = surv
        elif surv.is_finite():
            xi = Ordinal.of(r.randint(0, int(surv)))
        else:
            xi = surv
        done += 1
        for n in range(0, max(min_word, len(addr) + 2) + 1):
            checks += 1
            if not restrict_ball(K, a, b, Cylinder(x.word(n)), xi, x):
                ok = False
                cases.append(f"case {done}: x={x} xi={to_text(xi)} fails in [{x.word(n)}]")
                break
    return SuiteResult("ball-restriction", ok, cases, f"{done} instances, {checks} cylinders")


def suite_wf_bridge(seed: int = DEFAULT_SEED) -> SuiteResult:
    cases, ok = [], True
    nodes = NodeIndicatorsByH()
    ranks = []
    for T in wellfounded_schemas() + illfounded_schemas():
        wf = tr.is_wellfounded(T)
        conv = decide_convergence_to(nodes, NodeSet(T), Zero())
        if wf:
            ranks.append(tr.schema_rank(T))
        if conv != wf:
            ok = False
            cases.append(f"{T!r}: well-founded={wf} converges-to-zero={conv}")
    top = max(ranks)
    cases.append(f"largest well-founded rank: {to_text(top)}")
    return SuiteResult("wf-bridge", ok, cases, f"50 schemas, top rank {to_text(top)}")


def admissible_sets(r: random.Random, count: int = 10) -> list:
    out = [DecidablePointSet.whole()]
    while len(out) < count:
        A = DecidablePointSet.from_clopen(random_clopen(r))
        if A not in out:
            out.append(A)
    return out


def _describe_set(A: DecidablePointSet) -> str:
    if A.region == Region.whole():
        return "whole space"
    return " ".join(f"[{iv.lo}, {iv.hi}]" for iv in A.region.intervals)


def suite_p1(samples: int = 100, seed: int = DEFAULT_SEED) -> SuiteResult:
    r = random.Random(seed)
    sets = admissible_sets(r)
    points = [random_point(r) for _ in range(samples)]
    cases, ok, members = [], True, 0
    head = h_image(ZEROS).first(4)
    if head != [8, 16, 32, 64]:
        ok = False
        cases.append(f"H(0^inf) begins {head}")
    cases.append(f"H(0^inf) begins {head}")
    for i, A in enumerate(sets):
        inside = good = 0
        for x in points:
            inside += A.contains(x)
            if verify_p1(x, A):
                good += 1
            else:
                ok = False
                cases.append(f"A#{i} x={x}: verify_p1 false")
        members += inside
        cases.append(f"A#{i} {_describe_set(A)}: {good}/{len(points)} verified, {inside} points inside")
    cases.append(f"pairs: {len(sets) * len(points)}, with x in A: {members}")
    return SuiteResult("p1", ok, cases, f"{len(sets) * len(points)} pairs verified" if ok else "defect")


def suite_branches(seed: int = DEFAULT_SEED, length: int = 6, d: int = 1, caps: Caps = None) -> SuiteResult:
    caps = caps or Caps(n_l=4, max_word=4, depth=7, block_pool=4, d_range=(d,))
    cases, ok = [], True
    for seq, L in divergent_catalog():
        nodes = list(islice(branch_witness(seq, L, d), length + 1))
        bad = [len(n) for n in nodes if not tdl_member(seq, L, d, n)]
        if bad:
            ok = False
            cases.append(f"{L!r}: witness nodes of lengths {bad} rejected")
    for seq, L in convergent_catalog():
        heights = []
        c = caps
        for _ in range(3):
            heights.append(truncation_height("T", seq, L, d, c))
            c = c.doubled()
        if heights[1] != heights[2]:
            ok = False
        cases.append(f"{type(seq).__name__} {L!r}: heights {heights}")
    return SuiteResult("branches", ok, cases, "10 branches checked, 10 truncations stable" if ok else "failure")


def suite_monotone_lf(seed: int = DEFAULT_SEED, depth: int = 4) -> SuiteResult:
    seq = NodeIndicatorsByH()
    cases, ok, count = [], True, 0
    caps = Caps(n_l=6, max_word=5, depth=depth, block_pool=6)
    instances = [(L, d) for L in antichain_sets() for d in (0, 1, 2)][:20]
    for L, d in instances:
        count += 1
        res = newp3_monotone(seq, L, Zero(), d, caps)
        good = tr.verify_monotone(res.mapping, res.s_tree, res.t_image)
        increasing = True
        used = []
        for node in res.t_image:
            t = decode_t_node(node)
            increasing &= all(max(F) < min(G) for F, G in zip(t.t, t.t[1:]))
            used.extend(m for F in t.t for m in F)
            good &= tdl_member(seq, L, d, t)
        pool = caps.pool
        if used:
            top = max(used)
            pool = max(pool, sum(1 for _ in takewhile(lambda m: m <= top, L)))
        size = max([caps.block_size] + [len(F) for node in res.t_image for F in decode_t_node(node).t])
        t_caps = Caps(caps.n_l, caps.max_word, depth, pool, size)
        s_rank = truncation_rank("S", seq, L, d, caps, Zero())
        t_rank = truncation_rank("T", seq, L, d, t_caps)
        ranks_ok = tr.rank(res.s_tree) == s_rank and s_rank <= t_rank
        if not (good and increasing and ranks_ok):
            ok = False
        cases.append(f"{L!r} d={d}: map {'ok' if good else 'BAD'}, blocks "
                     f"{'increasing' if increasing else 'NOT increasing'}, rank S {s_rank} <= rank T {t_rank}")
    return SuiteResult("monotone-lf", ok, cases, f"{count} instances")


def oracle_corpus() -> list:
    nodes = NodeIndicatorsByH()
    out = [(nodes, NodeSet(T)) for T in wellfounded_schemas() + illfounded_schemas()]
    out += divergent_catalog() + convergent_catalog()
    out += [(SplitCantorCanonical(), h_image(random_point(random.Random(i)))) for i in range(20)]
    out += [(nodes, L) for L in antichain_sets()]
    out += [(nodes, Restrict(Naturals(), Point("", "01"), True))]
    out += [(SplitCantorCanonical(), Naturals())] + [(SplitCantorCanonical(), Affine(Naturals(), 4, b)) for b in range(4)]
    return out


def suite_oracle(seed: int = DEFAULT_SEED, window: int = 50, max_size: int = 6) -> SuiteResult:
    cases, ok, n = [], True, 0
    for seq, L in oracle_corpus():
        n += 1
        v = decide_convergence(seq, L)
        problems = oracle_disagreements(seq, L, v, window, max_size)
        if problems:
            ok = False
            cases.append(f"{L!r}: {problems[:3]}")
    return SuiteResult("oracle-agreement", ok, cases, f"{n} index sets, window {window}, points up to size {max_size}")


SUITES = {
    "monotone": lambda n, s: suite_monotone(n or 200, s),
    "alpha": lambda n, s: suite_alpha(n or 100, s),
    "attain": lambda n, s: suite_attain(n or 100, s),
    "restrict": lambda n, s: suite_restrict(n or 100, s),
    "wf-bridge": lambda n, s: suite_wf_bridge(s),
    "p1": lambda n, s: suite_p1(n or 100, s),
    "branches": lambda n, s: suite_branches(s),
    "monotone-lf": lambda n, s: suite_monotone_lf(s),
    "oracle": lambda n, s: suite_oracle(s),
}


def run_suite(name: str, samples=None, seed: int = DEFAULT_SEED) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](samples, seed)
