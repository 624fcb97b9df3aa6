"""Deciding pointwise convergence along an index set, with an independent cross-check."""
from descset import trees as tr
from descset.cantor import Affine, NodeSet, Point, Siblings
from descset.catalog import NodeIndicatorsByH, SplitCantorCanonical
from descset.convergence import Converges, decide_convergence, oracle_disagreements, refine_to_convergent

nodes, split = NodeIndicatorsByH(), SplitCantorCanonical()


def report(label, seq, L):
    v = decide_convergence(seq, L)
    if isinstance(v, Converges):
        text = f"converges to {v.limit}"
    else:
        text = f"diverges at {v.witness} (gap > {v.theta})"
    agree = "oracle agrees" if not oracle_disagreements(seq, L, v) else "ORACLE DISAGREES"
    print(f"  {label:<34} {text}; {agree}")


print("Node indicators along the nodes of a tree converge to 0 exactly when the tree")
print("has no infinite branch; a single branch leaves the indicator of its point.")
report("antichain of children", nodes, NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single()))))
report("chains of growing length", nodes, NodeSet(tr.OmegaJoin(tr.ChainRule(1, 1))))
report("one infinite branch", nodes, NodeSet(tr.FullBranch()))
report("branch plus antichain", nodes, NodeSet(tr.Join((tr.FullBranch(), tr.OmegaJoin(tr.ConstRule(tr.Single()))))))
print()

print("Step functions cut at points near x: cuts approaching from both sides diverge at x.")
x = Point("", "01")
report("cuts branching off (01)^inf", split, Affine(Siblings(x), 4, 0))
report("cuts above (01)^inf only", split, Affine(Siblings(x, 0), 4, 0))
print()

print("Every infinite index set has a convergent infinite subset, built explicitly:")
sub = refine_to_convergent(split, Affine(Siblings(x), 4, 0))
print(f"  {sub!r}")
report("refined subset", split, sub)
