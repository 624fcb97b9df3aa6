import pytest

from descset import trees as tr
from descset.cantor import (
    ONES,
    ZEROS,
    Affine,
    Finite,
    Naturals,
    NodeSet,
    Point,
    Restrict,
    Siblings,
    Undecidable,
    Union,
)
from descset.catalog import (
    Const,
    FiniteTableWithTail,
    NodeInd,
    NodeIndicatorsByH,
    PlusStep,
    PointInd,
    SplitCantorCanonical,
    Zero,
    equivalent,
)
from descset.convergence import (
    Converges,
    Diverges,
    branch_labels,
    decide_convergence,
    decide_convergence_to,
    oracle_disagreements,
    refine_to_convergent,
    sample_oracle,
    tree_representation,
)
from descset.reductions import h_image
from descset.selftest import convergent_catalog, divergent_catalog, illfounded_schemas, wellfounded_schemas

NODES = NodeIndicatorsByH()
SPLIT = SplitCantorCanonical()
ANTICHAIN = NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))


def test_antichain_converges_to_zero():
    v = decide_convergence(NODES, ANTICHAIN)
    assert isinstance(v, Converges) and equivalent(v.limit, Zero())


def test_split_image_of_periodic_point_diverges_there():
    x = Point("", "01")
    v = decide_convergence(SPLIT, h_image(x))
    assert isinstance(v, Diverges)
    assert v.witness == x


def test_finite_padding_keeps_the_verdict():
    core = NodeSet(tr.OmegaJoin(tr.ChainRule(1, 1)))
    padded = Union((Finite((0, 1, 2, 5)), core))
    assert decide_convergence(NODES, padded) == decide_convergence(NODES, core)


def test_converges_to_examples():
    assert decide_convergence_to(NODES, NodeSet(tr.OmegaJoin(tr.ChainRule(1, 0))), Zero())
    branch = NodeSet(tr.FullBranch())
    assert not decide_convergence_to(NODES, branch, Zero())
    assert decide_convergence_to(NODES, branch, PointInd(ZEROS))


@pytest.mark.parametrize("T", wellfounded_schemas() + illfounded_schemas())
def test_node_sets_converge_to_zero_iff_wellfounded(T):
    assert decide_convergence_to(NODES, NodeSet(T), Zero()) == tr.is_wellfounded(T)


def test_finite_index_set_rejected():
    with pytest.raises(ValueError):
        decide_convergence(NODES, Finite((1, 2, 3)))


def test_unsupported_sequence_is_undecidable():
    class Other(NodeIndicatorsByH.__mro__[1]):
        def term(self, n):
            return Const(n % 2)

    with pytest.raises(Undecidable):
        decide_convergence(Other(), Naturals())


def test_finite_table_does_not_change_the_verdict():
    seq = FiniteTableWithTail((Const(1), Const(0), NodeInd("1")), NODES)
    assert decide_convergence(seq, ANTICHAIN) == decide_convergence(NODES, ANTICHAIN)


def test_split_family_along_all_indices_diverges():
    for L in [Naturals()] + [Affine(Naturals(), 4, b) for b in range(4)]:
        v = decide_convergence(SPLIT, L)
        assert isinstance(v, Diverges)
        assert not oracle_disagreements(SPLIT, L, v)


def test_refine_examples():
    chain = NodeSet(tr.FullBranch())
    assert refine_to_convergent(NODES, chain) == chain
    sub = refine_to_convergent(NODES, Naturals())
    assert decide_convergence_to(NODES, sub, Zero())
    sub = refine_to_convergent(SPLIT, Affine(Naturals(), 4, 0))
    v = decide_convergence(SPLIT, sub)
    assert isinstance(v, Converges)
    head = sub.first(6)
    cuts = [Point(SPLIT[n].x.prefix, SPLIT[n].x.period) for n in head]
    assert all(a.word(20) < b.word(20) for a, b in zip(cuts, cuts[1:]))


@pytest.mark.parametrize("seq,L", divergent_catalog())
def test_divergent_catalog(seq, L):
    v = decide_convergence(seq, L)
    assert isinstance(v, Diverges)
    assert not oracle_disagreements(seq, L, v)


@pytest.mark.parametrize("seq,L", convergent_catalog())
def test_convergent_catalog(seq, L):
    v = decide_convergence(seq, L)
    assert isinstance(v, Converges)
    assert not oracle_disagreements(seq, L, v)


def test_diverges_subsets_are_inside_and_separated():
    seq, L = divergent_catalog()[0]
    v = decide_convergence(seq, L)
    lo, hi = v.sub_lo.first(8), v.sub_hi.first(8)
    assert all(L.contains(n) for n in lo + hi)
    assert min(seq[n].eval(v.witness) for n in hi) - max(seq[n].eval(v.witness) for n in lo) > v.theta


def test_oracle_catches_a_wrong_verdict():
    L = NodeSet(tr.FullBranch())
    assert oracle_disagreements(NODES, L, Converges(Zero()))
    assert not oracle_disagreements(NODES, L, Converges(PointInd(ZEROS)))


def test_oracle_reports_limits():
    rep = sample_oracle(SPLIT, Affine(Siblings(ONES, 1), 4, 0), 50, 4)
    assert not rep.unstable
    assert all(v == PlusStep(ONES).eval(y) for y, v in rep.limits.items())


def test_tree_representation_single_code():
    L = NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))
    rep = tree_representation(NODES, [L], 3)
    assert rep.labels[()] == 0
    assert len(rep.tree) == 4  # a single branch of length 3
    leaf = max(rep.tree, key=len)
    members = [n for n in range(3) if n in L]
    assert branch_labels(rep, leaf) == sorted({0, *members})


def test_tree_representation_shared_prefix():
    a = Restrict(Naturals(), ZEROS, True)
    b = Restrict(Naturals(), Point("1", "0"), True)
    rep = tree_representation(NODES, [a, b], 6)
    k = next(k for k in range(6) if (k in a) != (k in b))
    depths = {}
    for node in rep.tree:
        depths[len(node)] = depths.get(len(node), 0) + 1
    assert all(depths[j] == 1 for j in range(k + 1))
    assert depths[k + 1] == 2


def test_tree_representation_rejects_divergent_codes():
    with pytest.raises(ValueError):
        tree_representation(NODES, [Naturals()], 3)
