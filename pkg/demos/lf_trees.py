"""Trees whose branches certify divergence, cut down to finite windows."""
from itertools import islice

from descset import trees as tr
from descset.cantor import NodeSet, Point, h_inv
from descset.catalog import NodeIndicatorsByH, SplitCantorCanonical, Zero
from descset.lftrees import Caps, branch_witness, newp3_monotone, tdl_member, truncation_height
from descset.ordinals import to_text
from descset.reductions import h_image

split = SplitCantorCanonical()
x = Point("", "01")
L = h_image(x)
print("Along the cuts near (01)^inf the step functions diverge, so the tree of")
print("separated pairs has an infinite branch. Its balls close in on the point:")
for node in islice(branch_witness(split, L, 1), 5):
    balls = [h_inv(l) or "-" for l in node.w]
    print(f"  length {len(node)}: balls {balls}; member: {tdl_member(split, L, 1, node)}")
print()

nodes = NodeIndicatorsByH()
antichain = NodeSet(tr.OmegaJoin(tr.ConstRule(tr.Single())))
print("For a convergent subsequence the tree is well-founded, and doubling the")
print("window leaves the longest node unchanged:")
caps = Caps(n_l=4, max_word=4, depth=6, block_pool=4)
for _ in range(3):
    print(f"  n_l={caps.n_l:<3} pool={caps.pool:<3} longest node {truncation_height('T', nodes, antichain, 1, caps)}")
    caps = caps.doubled()
print()

print("Distances to the limit give a second tree that maps monotonically into the first:")
res = newp3_monotone(nodes, antichain, Zero(), 1, Caps(n_l=6, max_word=5, depth=3, block_pool=6))
print(f"  S nodes {len(res.s_tree)}, rank {to_text(tr.rank(res.s_tree))}; image rank {to_text(tr.rank(res.t_image))}")
print(f"  map verified: {tr.verify_monotone(res.mapping, res.s_tree, res.t_image)}")
