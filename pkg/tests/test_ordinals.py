import pytest
from hypothesis import given, strategies as st

from descset.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    as_ordinal,
    from_json,
    from_text,
    ord_add,
    ord_compare,
    ord_sup_plus_one,
    to_json,
    to_text,
)


def w_times(k: int, n: int = 0) -> Ordinal:
    """omega*k + n"""
    terms = ((ONE, k),) if k else ()
    return Ordinal(terms + (((ZERO, n),) if n else ()))


def test_compare_examples():
    assert ord_compare(ZERO, ZERO) == "equal"
    assert ord_compare(as_ordinal(3), OMEGA) == "less"
    assert ord_compare(w_times(2, 1), w_times(2)) == "greater"


def test_add_examples():
    assert ord_add(w_times(1, 3), ZERO) == w_times(1, 3)
    assert ord_add(ONE, OMEGA) == OMEGA
    assert ord_add(w_times(1, 3), w_times(2)) == w_times(3)


def test_sup_plus_one_examples():
    assert ord_sup_plus_one([ZERO]) == ONE
    assert ord_sup_plus_one([OMEGA, as_ordinal(5), OMEGA]) == w_times(1, 1)
    assert ord_sup_plus_one([w_times(2), w_times(1, 7)]) == w_times(2, 1)


def test_malformed_cnf_rejected():
    with pytest.raises(ValueError):
        Ordinal(((ZERO, 1), (ONE, 1)))
    with pytest.raises(ValueError):
        Ordinal(((ONE, 0),))


# ordinals below omega^2 as pairs (k, n) compare lexicographically and add by
# the absorption rule; this unary model is the oracle
small = st.tuples(st.integers(0, 4), st.integers(0, 4))


def model_add(x, y):
    (k1, n1), (k2, n2) = x, y
    return (k1 + k2, n2) if k2 else (k1, n1 + n2)


@given(small, small)
def test_compare_matches_pair_order(x, y):
    want = "less" if x < y else "greater" if x > y else "equal"
    assert ord_compare(w_times(*x), w_times(*y)) == want


@given(small, small)
def test_add_matches_absorption_model(x, y):
    assert ord_add(w_times(*x), w_times(*y)) == w_times(*model_add(x, y))


@given(small, small, small)
def test_add_associative(x, y, z):
    a, b, c = w_times(*x), w_times(*y), w_times(*z)
    assert ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c))


nested = st.recursive(
    st.just(ZERO),
    lambda inner: st.lists(st.tuples(inner, st.integers(1, 3)), min_size=1, max_size=3).map(
        lambda ts: _normal(ts)),
    max_leaves=6,
)


def _normal(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return Ordinal(tuple(sorted(out.items(), key=lambda p: p[0], reverse=True)))


@given(nested)
def test_text_and_json_round_trip(a):
    assert from_text(to_text(a)) == a
    assert from_json(to_json(a)) == a


def test_text_form():
    assert to_text(w_times(2, 1)) == "w^{1}*2 + 1"
    assert from_text("w^{w^{1}*1}*1 + 4") > w_times(9, 9)
