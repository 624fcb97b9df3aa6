import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from descset.cantor import Cylinder
from descset.ordinals import OMEGA, ONE, ZERO, as_ordinal, ord_add
from descset.rank import (
    Apex,
    Cycle,
    Leaf,
    MultiComponent,
    Ramp,
    Repeat,
    alpha_full,
    alpha_on,
    alpha_on_space,
    apex_point,
    attaining_copy,
    brute_force_alpha,
    build_rank_example,
    crossing_pairs,
    instantiate,
    iterate_derivative,
    restrict_ball,
    sep_derivative,
    values_of,
)
from descset.selftest import random_presentation

A, B = Fraction(1, 3), Fraction(2, 3)
ALTERNATING = Apex(Fraction(0), (Cycle((Leaf(0), Leaf(1))),))


def test_derivative_examples():
    zero = Apex(Fraction(0), (Repeat(Leaf(0)),))
    assert sep_derivative(zero, A, B).is_empty()
    assert sep_derivative(Leaf(1), A, B).is_empty()
    D = sep_derivative(ALTERNATING, A, B)
    assert not D.is_empty()
    assert D.contains(apex_point(""))
    assert not D.contains(apex_point("0"))


def test_iterated_derivatives_need_one_pair():
    D = sep_derivative(ALTERNATING, A, B)
    with pytest.raises(ValueError):
        sep_derivative(D, Fraction(1, 4), B)


def test_alpha_examples():
    assert alpha_on(Leaf(0), A, B) == ONE
    assert alpha_on(ALTERNATING, A, B) == as_ordinal(2)
    assert alpha_on(build_rank_example(3)) == as_ordinal(3)


def test_alpha_full_examples():
    assert alpha_full(Leaf(Fraction(1, 2))) == ONE
    assert alpha_full(ALTERNATING, [(A, B)]) == alpha_on(ALTERNATING, A, B)
    three = Apex(Fraction(1, 2), (Cycle((Leaf(0), Leaf(1))),))
    pairs = crossing_pairs(values_of(three))
    assert len(pairs) == 3
    assert alpha_full(three) == max(alpha_on(three, a, b) for a, b in pairs)


def test_bad_pair_rejected():
    with pytest.raises(ValueError):
        alpha_on(Leaf(0), B, A)


def test_restrict_ball_examples():
    K = build_rank_example(2)
    x = apex_point("")
    assert restrict_ball(K, A, B, Cylinder(x.word(1)), ONE, x)
    leaf = apex_point("0")
    assert not restrict_ball(K, A, B, Cylinder(leaf.word(3)), ONE, leaf)
    assert restrict_ball(K, A, B, Cylinder(leaf.word(3)), ZERO, leaf)


def test_rank_example_patterns():
    K = build_rank_example(2, "A1")
    assert K.value == 0 and alpha_on(K) == as_ordinal(2)
    big = build_rank_example(ord_add(OMEGA, ONE), "A3")
    assert alpha_on(big) == ord_add(OMEGA, ONE)
    assert alpha_on(build_rank_example(1)) == ONE


def test_ramp_reaches_its_limit():
    K = Apex(Fraction(1, 2), (Ramp(OMEGA, "A1"),))
    assert alpha_on(K) == ord_add(OMEGA, ONE)


def test_brute_examples():
    assert brute_force_alpha(instantiate(Leaf(0), 1), A, B) == 1
    assert brute_force_alpha(instantiate(ALTERNATING, 4), A, B) == 2
    assert brute_force_alpha(instantiate(build_rank_example(3), 3), A, B) == 3


def test_iterate_derivative_matches_repeated_steps():
    K = build_rank_example(4)
    D = K
    for k in range(1, 4):
        D = sep_derivative(D, A, B)
        assert D == iterate_derivative(K, k, A, B)
        assert alpha_on(D) == as_ordinal(4 - k)


def test_multi_component_space():
    M = MultiComponent((build_rank_example(2), build_rank_example(3)))
    assert alpha_on_space(M) == as_ordinal(3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_alpha_is_zero_or_successor(seed):
    K = random_presentation(random.Random(seed), 3, ramps=True)
    for a, b in crossing_pairs(values_of(K)):
        alpha = alpha_on(K, a, b)
        assert alpha == ZERO or alpha.is_successor()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_alpha_matches_brute_force(seed):
    K = random_presentation(random.Random(seed), 3)
    for a, b in crossing_pairs(values_of(K)):
        sample = instantiate(K, 3)
        assert as_ordinal(brute_force_alpha(sample, a, b, 256)) == alpha_on(K, a, b)


def test_attaining_copy_has_the_predecessor_rank():
    K = build_rank_example(4)
    k, r = attaining_copy(K)
    assert r >= as_ordinal(2)
