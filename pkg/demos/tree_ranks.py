"""Ranks of trees, and why a monotone map can only go uphill."""
from descset import trees as tr
from descset.ordinals import to_text


def show(name, T):
    print(f"  {name:<38} rank {to_text(tr.schema_rank(T))}")


print("Finite trees lose their leaves at each derivative step; the rank counts the steps.")
T = tr.FinTree.from_nodes([(), (0,), (1,), (1, 0)])
step = T
while len(step):
    print(f"  {sorted(step.nodes)}")
    step = tr.derivative(step)
print(f"  rank {to_text(tr.rank(T))}\n")

print("Schemas describe infinite well-founded trees in closed form:")
show("Chain(3)", tr.Chain(3))
show("Join(Chain(2), Chain(5))", tr.Join((tr.Chain(2), tr.Chain(5))))
show("OmegaJoin(n -> Chain(n+1))", tr.OmegaJoin(tr.ChainRule(1, 1)))
show("OmegaJoin(n -> OmegaJoin(Chain(n+1)))", tr.OmegaJoin(tr.ConstRule(tr.OmegaJoin(tr.ChainRule(1, 1)))))
print()

print("A strictly monotone map S -> T exists exactly when rank(S) <= rank(T):")
small, big = tr.FinTree.from_nodes([(), (0,), (1,)]), tr.FinTree.from_nodes([(), (0,), (0, 0)])
for S, T in [(small, big), (big, small), (tr.FinTree.from_nodes([(), (0,), (0, 0), (0, 0, 0)]), big)]:
    m = tr.find_monotone_map(S, T)
    print(f"  rank {to_text(tr.rank(S))} -> rank {to_text(tr.rank(T))}: {'map ' + str(m) if m else 'no map'}")
print()

print("An ill-founded schema has no rank, but an infinite branch can be walked:")
T = tr.Join((tr.Chain(3), tr.FullBranch()))
print(f"  well-founded: {tr.is_wellfounded(T)}; branch to depth 6: {tr.konig_branch(T, 6)}")
