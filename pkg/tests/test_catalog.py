from fractions import Fraction

from hypothesis import given, settings, strategies as st

from descset.cantor import ClopenSet, Cylinder, Point, ONES, ZEROS
from descset.catalog import (
    Const,
    MinusStep,
    NodeInd,
    NodeIndicatorsByH,
    PlusStep,
    PointInd,
    Region,
    SplitCantorCanonical,
    Zero,
    diff_region,
    equivalent,
    evaluate,
    region_covers,
    split_index,
)
from descset.convergence import sample_points

SAMPLE = sample_points(6)
points = st.builds(Point, st.text("01", max_size=4), st.text("01", min_size=1, max_size=3))
fns = st.one_of(
    st.builds(PlusStep, points),
    st.builds(MinusStep, points),
    st.builds(NodeInd, st.text("01", max_size=3)),
    st.builds(PointInd, points),
    st.builds(Const, st.sampled_from([0, 1, Fraction(1, 2)])),
    st.just(Zero()),
)


def test_eval_examples():
    assert evaluate(PlusStep(ZEROS), ONES) == 1
    x = Point("01", "10")
    assert evaluate(MinusStep(x), x) == 0
    assert evaluate(NodeInd("01"), Point("01", "1")) == 1


def test_diff_region_examples():
    assert diff_region(NodeInd("01"), Zero(), Fraction(1, 2)) == Region.cylinder("01")
    f = PlusStep(Point("1", "0"))
    assert diff_region(f, f, 0).is_empty()
    x = Point("", "01")
    assert diff_region(PlusStep(x), MinusStep(x), Fraction(1, 2)) == Region.point(x)


def test_region_covers_examples():
    assert region_covers(Cylinder("0"), [Region.cylinder("0")])
    assert not region_covers(Cylinder(""), [Region.cylinder("0")])
    assert region_covers(Cylinder("0"), [Region.cylinder("00"), Region.cylinder("01")])


def test_steps_at_adjacent_dyadics_agree():
    # 0 1^inf and 1 0^inf have nothing strictly between them
    assert equivalent(MinusStep(Point("0", "1")), PlusStep(Point("1", "0")))


regions = st.recursive(
    fns.map(lambda f: f.support()),
    lambda inner: st.one_of(
        st.builds(lambda a, b: a | b, inner, inner),
        st.builds(lambda a, b: a & b, inner, inner),
        st.builds(lambda a: ~a, inner),
    ),
    max_leaves=5,
)


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_region_algebra_matches_membership(A, B):
    for y in SAMPLE:
        a, b = A.contains(y), B.contains(y)
        assert (A | B).contains(y) == (a or b)
        assert (A & B).contains(y) == (a and b)
        assert (~A).contains(y) == (not a)
        assert A.minus(B).contains(y) == (a and not b)


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_subset_agrees_with_difference(A, B):
    rest = A.minus(B)
    assert A.subset(B) == rest.is_empty()
    if not rest.is_empty():
        z = rest.pick()
        assert A.contains(z) and not B.contains(z)
    else:
        assert all(B.contains(y) for y in SAMPLE if A.contains(y))


@settings(max_examples=150, deadline=None)
@given(fns, fns, st.sampled_from([0, Fraction(1, 3), Fraction(1, 2), 1]))
def test_diff_region_is_exact(f, g, theta):
    R = diff_region(f, g, theta)
    for y in SAMPLE:
        assert R.contains(y) == (abs(f.eval(y) - g.eval(y)) > theta)


@given(st.lists(st.text("01", max_size=3), max_size=4))
def test_clopen_region_matches_clopen(words):
    c = ClopenSet.of(*words)
    R = Region.clopen(c)
    assert all(R.contains(y) == c.contains(y) for y in SAMPLE)


def test_dense_sequences():
    nodes = NodeIndicatorsByH()
    assert nodes[0] == NodeInd("") and nodes[2] == NodeInd("1")
    split = SplitCantorCanonical()
    assert split[0] == PlusStep(ZEROS) and split[3] == MinusStep(ONES)
    assert split_index(9) == ("1", 1, "+")
