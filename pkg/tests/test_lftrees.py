from itertools import islice

import pytest

from descset import trees as tr
from descset.cantor import Affine, Naturals, NodeSet, Point, h_enum, h_inv
from descset.catalog import NodeIndicatorsByH, SplitCantorCanonical, Zero
from descset.lftrees import (
    Caps,
    SNode,
    TNode,
    ball,
    branch_witness,
    decode_s_node,
    decode_t_node,
    glued_member,
    glued_rank,
    is_acceptable,
    newp3_monotone,
    sdl_member,
    tdl_member,
    threshold,
    truncate_tree,
    truncation_height,
    witness_in_caps,
)
from descset.ordinals import ONE, as_ordinal
from descset.reductions import h_image
from descset.selftest import antichain_sets, divergent_catalog

NODES = NodeIndicatorsByH()
FOURS = Affine(Naturals(), 4, 0)  # words h_inv(4k): "01", "001", "101", ...
SMALL = Caps(n_l=4, max_word=4, depth=3, block_pool=4)


def test_balls_and_acceptability():
    assert ball(h_enum("01")).word == "01"
    assert threshold(1) == 0.5
    assert is_acceptable(())
    assert is_acceptable((0, h_enum("0"), h_enum("01")))
    # second ball must extend the first
    assert not is_acceptable((h_enum("0"), h_enum("1")))
    # position i needs diameter at most 1/(i+1): "01" serves i = 3 but not i = 4
    assert is_acceptable((0, h_enum("0"), h_enum("01"), h_enum("01")))
    assert not is_acceptable((0, h_enum("0"), h_enum("01"), h_enum("01"), h_enum("01")))


def test_tdl_examples():
    assert tdl_member(NODES, FOURS, 1, TNode())
    inside = TNode((4,), ({8},), (h_enum("01"),))
    assert tdl_member(NODES, FOURS, 1, inside)
    # the whole space meets the set where both indicators vanish
    assert not tdl_member(NODES, FOURS, 1, TNode((4,), ({8},), (0,)))
    # 5 is not in L
    assert not tdl_member(NODES, FOURS, 1, TNode((5,), ({8},), (h_enum("10"),)))


def test_tdl_shape_errors():
    with pytest.raises(ValueError):
        tdl_member(NODES, FOURS, 1, TNode((4,), (), (0,)))
    with pytest.raises(ValueError):
        tdl_member(NODES, FOURS, 1, TNode((8, 4), ({12}, {16}), (0, 1)))
    with pytest.raises(ValueError):
        tdl_member(NODES, FOURS, 1, TNode((4, 8), ({12, 20}, {16}), (0, 1)))


def test_sdl_examples():
    assert sdl_member(NODES, FOURS, Zero(), 1, SNode())
    assert sdl_member(NODES, FOURS, Zero(), 1, SNode((4,), (h_enum("01"),)))
    assert sdl_member(NODES, FOURS, Zero(), 1, SNode((4,), (h_enum("011"),)))
    assert not sdl_member(NODES, FOURS, Zero(), 1, SNode((4,), (h_enum("0"),)))


def test_glued_examples():
    for d in range(4):
        assert glued_member("T", NODES, FOURS, TNode((d,), ({d},), (d,)))
        assert glued_member("S", NODES, FOURS, SNode((d,), (d,)), Zero())
    stripped = TNode((4,), ({8},), (h_enum("01"),))
    assert tdl_member(NODES, FOURS, 3, stripped)
    glued = TNode((3,) + stripped.s, (frozenset({3}),) + stripped.t, (3,) + stripped.w)
    assert glued_member("T", NODES, FOURS, glued)
    with pytest.raises(ValueError):
        glued_member("T", NODES, FOURS, TNode((3,), ({2},), (3,)))


def test_truncation_depth_zero_is_the_root():
    caps = Caps(n_l=4, max_word=4, depth=0)
    assert truncate_tree("T", NODES, FOURS, 1, caps) == tr.FinTree.from_nodes([()])


def test_zero_one_families_give_trivial_trees_for_d0():
    # no two values of a 0/1 family differ by more than 1
    seq, L = divergent_catalog()[0]
    assert truncation_height("T", seq, L, 0, SMALL) == 0


def test_divergent_truncation_holds_the_witness_chain():
    seq, L = NodeIndicatorsByH(), Naturals()
    caps = Caps(n_l=8, max_word=6, depth=3, block_pool=8)
    node = witness_in_caps(seq, L, 1, caps)
    assert len(node) == 3 and tdl_member(seq, L, 1, node)
    assert truncation_height("T", seq, L, 1, caps) == 3


def test_convergent_truncation_is_shallow():
    L = NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))
    shallow = truncation_height("T", NODES, L, 1, Caps(n_l=6, max_word=5, depth=6, block_pool=6))
    assert shallow < 6


def test_truncate_tree_matches_height():
    T = truncate_tree("T", NODES, FOURS, 1, SMALL)
    assert tr.rank(T) == as_ordinal(truncation_height("T", NODES, FOURS, 1, SMALL) + 1)
    for node in T:
        assert tdl_member(NODES, FOURS, 1, decode_t_node(node))


def test_truncate_s_tree_nodes_are_members():
    T = truncate_tree("S", NODES, FOURS, 1, SMALL, Zero())
    assert len(T) > 1
    for node in T:
        assert sdl_member(NODES, FOURS, Zero(), 1, decode_s_node(node))


def test_node_limit():
    with pytest.raises(ValueError, match="caps"):
        truncate_tree("T", NODES, FOURS, 1, SMALL, max_nodes=3)


def test_glued_rank_is_sup_plus_one():
    caps = Caps(n_l=4, max_word=4, depth=2, block_pool=4, d_range=(0, 1))
    r = glued_rank("T", NODES, FOURS, caps)
    assert r == as_ordinal(max(truncation_height("T", NODES, FOURS, d, caps) + 1 for d in (0, 1)) + 1)


def test_split_witness_balls_shrink_to_the_point():
    x = Point("", "01")
    L = h_image(x)
    nodes = list(islice(branch_witness(SplitCantorCanonical(), L, 1), 4))
    assert nodes[0] == TNode()
    for k, node in enumerate(nodes):
        assert len(node) == k
        words = [h_inv(l) for l in node.w]
        assert all(x.starts_with(u) for u in words)
        assert [len(u) for u in words] == sorted(len(u) for u in words)
    assert tdl_member(SplitCantorCanonical(), L, 1, nodes[3])


def test_witness_needs_divergence():
    with pytest.raises(ValueError):
        next(branch_witness(NODES, NodeSet(tr.OmegaJoin(tr.ChainRule(1, 0))), 1))


def test_newp3_on_antichain():
    L = antichain_sets()[0]
    caps = Caps(n_l=6, max_word=5, depth=3, block_pool=6)
    res = newp3_monotone(NODES, L, Zero(), 1, caps)
    assert tr.verify_monotone(res.mapping, res.s_tree, res.t_image)
    assert len(set(res.mapping.values())) == len(res.mapping)
    for node in res.t_image:
        t = decode_t_node(node)
        assert all(max(F) < min(G) for F, G in zip(t.t, t.t[1:]))
        if len(t) <= 2:
            assert tdl_member(NODES, L, 1, t)


def test_newp3_empty_s_tree():
    L = antichain_sets()[0]
    res = newp3_monotone(NODES, L, Zero(), 0, SMALL)
    assert res.s_tree == tr.FinTree.from_nodes([()])
    assert res.mapping == {(): ()}


def test_newp3_rejects_divergent_or_discontinuous():
    with pytest.raises(ValueError):
        newp3_monotone(NODES, Naturals(), Zero(), 1, SMALL)
    from descset.catalog import PlusStep

    with pytest.raises(ValueError):
        newp3_monotone(NODES, antichain_sets()[0], PlusStep(Point("", "0")), 1, SMALL)
