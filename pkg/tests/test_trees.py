import pytest
from hypothesis import given, settings, strategies as st

from descset import trees as tr
from descset.ordinals import OMEGA, ONE, Ordinal, ZERO, as_ordinal, ord_add
from descset.selftest import all_small_trees, random_fintree


def ft(*nodes):
    return tr.FinTree.from_nodes(nodes)


def chain(k):
    return tr.FinTree.from_nodes([(0,) * i for i in range(k)])


def test_fintree_must_be_downward_closed():
    with pytest.raises(ValueError):
        ft((), (0, 0))


def test_derivative_examples():
    assert tr.derivative(ft()) == ft()
    assert tr.derivative(ft((), (0,), (1,))) == ft(())
    assert tr.derivative(ft((), (0,), (0, 0), (1,))) == ft((), (0,))


def test_rank_examples():
    assert tr.rank(ft()) == ZERO
    assert tr.rank(chain(3)) == as_ordinal(3)
    assert tr.rank(ft((), (0,), (1,), (1, 0))) == as_ordinal(3)


def test_schema_rank_examples():
    assert tr.schema_rank(tr.Chain(3)) == as_ordinal(3)
    assert tr.schema_rank(tr.OmegaJoin(tr.ChainRule(1, 1))) == ord_add(OMEGA, ONE)
    assert tr.schema_rank(tr.Join((tr.Chain(2), tr.Chain(5)))) == as_ordinal(6)


def test_schema_rank_of_illfounded_raises():
    with pytest.raises(ValueError):
        tr.schema_rank(tr.FullBranch())


def test_wellfounded_examples():
    assert tr.is_wellfounded(tr.Chain(7))
    assert not tr.is_wellfounded(tr.FullBranch())
    assert tr.is_wellfounded(tr.OmegaJoin(tr.ChainRule(1, 0)))
    assert not tr.is_wellfounded(tr.Join((tr.Chain(2), tr.FullBranch())))


@pytest.mark.parametrize("depth", [1, 2, 3, 4, 5])
def test_truncation_ranks_of_omega_join(depth):
    T = tr.truncate(tr.OmegaJoin(tr.ChainRule(1, 1)), depth, 40)
    assert tr.rank(T) == as_ordinal(depth + 1)


def test_monotone_map_examples():
    assert tr.find_monotone_map(chain(2), chain(3)) is not None
    assert tr.find_monotone_map(chain(3), chain(2)) is None
    assert tr.find_monotone_map(ft(()), ft(())) == {(): ()}


def test_verify_monotone_examples():
    C2 = chain(2)
    assert tr.verify_monotone({(): (), (0,): (0,)}, C2, C2)
    fan = ft((), (0,), (1,))
    assert tr.verify_monotone({(): (), (0,): (0,), (1,): (0,)}, fan, C2)
    assert not tr.verify_monotone({(): (), (0,): (), (0, 0): ()}, chain(3), chain(1))


def test_konig_examples():
    assert tr.konig_branch(tr.FullBranch(), 3) == (0, 0, 0)
    node = tr.konig_branch(tr.Join((tr.FullBranch(), tr.Chain(2))), 4)
    assert len(node) == 4 and tr.schema_contains(tr.Join((tr.FullBranch(), tr.Chain(2))), node)
    with pytest.raises(ValueError):
        tr.konig_branch(tr.Chain(9), 1)


def test_small_tree_count():
    # unordered rooted trees with 1..6 nodes: 1 + 1 + 2 + 4 + 9 + 20
    assert len(all_small_trees(6)) == 37


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_found_maps_verify_and_respect_rank(seed):
    import random

    r = random.Random(seed)
    S, T = random_fintree(r, 10), random_fintree(r, 10)
    m = tr.find_monotone_map(S, T)
    if m is not None:
        assert tr.verify_monotone(m, S, T)
        assert tr.rank(S) <= tr.rank(T)
    else:
        assert tr.rank(S) > tr.rank(T)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_is_longest_chain(seed):
    import random

    T = random_fintree(random.Random(seed), 12)
    longest = max((len(n) + 1 for n in T), default=0)
    assert tr.rank(T) == as_ordinal(longest)


def test_pairing_round_trip():
    for a in range(30):
        for b in range(30):
            assert tr.unpair(tr.pair(a, b)) == (a, b)
