import pytest
from hypothesis import given, strategies as st

from descset.cantor import (
    ONES,
    ZEROS,
    Affine,
    ClopenSet,
    Cylinder,
    Drop,
    Finite,
    Naturals,
    NodeSet,
    Point,
    Siblings,
    Union,
    h_enum,
    h_inv,
    lex_compare,
    successor,
)
from descset import trees as tr

bits = st.text("01", max_size=5)
points = st.builds(Point, bits, st.text("01", min_size=1, max_size=4))


def test_point_canonical_form():
    assert Point("0", "10") == Point("", "01")
    assert Point("0111", "1") == Point("0", "1")
    assert Point("", "0101") == Point("", "01")
    with pytest.raises(ValueError):
        Point("012", "1")
    with pytest.raises(ValueError):
        Point("0", "")


def test_parse():
    assert Point.parse("01(10)") == Point("01", "10")
    with pytest.raises(ValueError):
        Point.parse("0101")


@given(points)
def test_equal_points_have_equal_expansions(x):
    y = Point(x.prefix + x.period, x.period * 2)
    assert x == y
    assert x.word(30) == y.word(30)


def test_lex_compare_examples():
    assert lex_compare(ZEROS, ONES) == "less"
    assert lex_compare(Point("01", "0"), Point("0", "10")) == "less"
    x = Point("1", "01")
    assert lex_compare(x, x) == "equal"


@given(points, points)
def test_lex_compare_matches_long_prefix(x, y):
    a, b = x.word(64), y.word(64)
    want = "less" if a < b else "greater" if a > b else "equal"
    assert lex_compare(x, y) == want


def test_successor_only_for_dyadic_left_ends():
    assert successor(Point("0", "1")) == Point("1", "0")
    assert successor(Point("", "01")) is None


def test_clopen_examples():
    a, b = ClopenSet.of("0"), ClopenSet.of("1")
    assert (a | b) == ClopenSet.whole()
    assert (a & b).is_empty()
    assert ClopenSet.of("01").subset(a)
    assert ~a == b


@given(st.lists(bits, max_size=4), st.lists(bits, max_size=4), points)
def test_clopen_ops_match_membership(u, v, y):
    a, b = ClopenSet.of(*u), ClopenSet.of(*v)
    assert (a | b).contains(y) == (a.contains(y) or b.contains(y))
    assert (a & b).contains(y) == (a.contains(y) and b.contains(y))
    assert (~a).contains(y) == (not a.contains(y))
    if a.subset(b) and a.contains(y):
        assert b.contains(y)


def test_h_examples():
    assert h_enum("") == 0
    assert h_enum("1") == 2
    assert h_enum("001") == 8
    assert [h_inv(n) for n in range(7)] == ["", "0", "1", "00", "01", "10", "11"]


@given(st.integers(0, 10**6))
def test_h_round_trip(n):
    assert h_enum(h_inv(n)) == n


def test_cylinder_endpoints():
    c = Cylinder("01")
    assert c.lo == Point("01", "0") and c.hi == Point("01", "1")
    assert c.contains(Point("011", "0")) and not c.contains(Point("1", "0"))


def test_index_kth_examples():
    assert Finite((3, 1, 4)).kth(0) == 1
    assert Affine(Siblings(ZEROS), 4, 0).kth(0) == 8
    assert Union((Finite((2,)), Finite((2,)))).kth(0) == 2


def test_h_image_of_zeros_begins():
    assert Affine(Siblings(ZEROS), 4, 0).first(4) == [8, 16, 32, 64]


index_sets = st.one_of(
    st.builds(lambda v: Finite(tuple(v)), st.lists(st.integers(0, 60), max_size=6)),
    st.just(Naturals()),
    st.builds(Siblings, points, st.sampled_from([None, 0, 1])),
    st.builds(NodeSet, st.sampled_from([tr.Chain(4), tr.FullBranch(), tr.OmegaJoin(tr.ChainRule(1, 0))])),
)
composite = st.one_of(
    index_sets,
    st.builds(Affine, index_sets, st.integers(1, 5), st.integers(0, 4)),
    st.builds(lambda a, b: Union((a, b)), index_sets, index_sets),
    st.builds(Drop, index_sets, st.integers(0, 3)),
)


@given(composite)
def test_enumeration_is_increasing_and_matches_membership(L):
    head = L.first(12)
    assert head == sorted(set(head))
    assert all(L.contains(n) for n in head)
    if head:
        # sibling codes grow exponentially, so brute force only a window
        top = min(head[-1], 4096)
        assert [n for n in range(top + 1) if L.contains(n)] == [n for n in head if n <= top]
    for k, n in enumerate(head):
        assert L.kth(k) == n


@given(composite)
def test_infinite_flag(L):
    head = L.first(30)
    if not L.is_infinite():
        assert len(L.first(10_000)) == len(head) or len(head) < 30
