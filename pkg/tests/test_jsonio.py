import json
from fractions import Fraction

import pytest

from descset import trees as tr
from descset.cantor import Affine, ClopenSet, Naturals, NodeSet, Point, Restrict, Siblings, Union
from descset.catalog import FiniteTableWithTail, NodeInd, NodeIndicatorsByH, PlusStep, Region
from descset.convergence import decide_convergence
from descset.jsonio import DecodeError, decode, dumps, encode, envelope, loads
from descset.lftrees import Caps, TNode
from descset.ordinals import OMEGA, ord_add, ONE
from descset.rank import Apex, Cycle, Leaf, Ramp, Repeat, build_rank_example
from descset.reductions import DecidablePointSet

VALUES = [
    Point("01", "10"),
    Leaf(Fraction(2, 7)),
    ord_add(OMEGA, ONE),
    ClopenSet.of("01", "1"),
    tr.FinTree.from_nodes([(), (0,), (1,), (1, 0)]),
    tr.OmegaJoin(tr.StemRule(1, 2, tr.Join((tr.Chain(2), tr.FullBranch())))),
    Union((NodeSet(tr.Chain(3)), Affine(Siblings(Point("", "01"), 1), 4, 2))),
    Restrict(Naturals(), Point("1", "0"), False),
    FiniteTableWithTail((NodeInd("0"), PlusStep(Point("", "1"))), NodeIndicatorsByH()),
    Region.cylinder("01") | Region.point(Point("", "01")),
    Apex(Fraction(1, 2), (Repeat(Leaf(0)), Cycle((Leaf(1), Leaf(0))), Ramp(OMEGA, "A2"))),
    build_rank_example(4),
    TNode((1, 4), ({2}, {5, 7}), (0, 3)),
    Caps(n_l=6, max_word=5, depth=3, block_pool=6),
    DecidablePointSet.from_clopen(ClopenSet.of("1")),
]


@pytest.mark.parametrize("value", VALUES, ids=lambda v: type(v).__name__)
def test_round_trip(value):
    assert loads(dumps(encode(value))) == value


def test_verdicts_encode():
    v = decide_convergence(NodeIndicatorsByH(), NodeSet(tr.FullBranch()))
    doc = json.loads(dumps(encode(v)))
    assert doc["type"] == "Converges" and doc["limit"]["type"] == "PointInd"
    assert decode(doc) == v


def test_envelope_carries_schema():
    assert envelope(x=Fraction(1, 3)) == {"schema": "v1", "x": "1/3"}


@pytest.mark.parametrize("text", [
    "{",
    '{"type": "NoSuchThing"}',
    '{"type": "Chain", "k": 3, "extra": 1}',
    '{"prefix": "0"}',
    '{"prefix": "02", "period": "1"}',
    '{"type": "Chain"}',
])
def test_bad_input_raises_decode_error(text):
    with pytest.raises(DecodeError):
        loads(text)


def test_encoding_is_deterministic():
    a = dumps(encode(ClopenSet.of("1", "01", "001")))
    b = dumps(encode(ClopenSet.of("001", "01", "1")))
    assert a == b
