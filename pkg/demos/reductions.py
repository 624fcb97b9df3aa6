"""Turning points into index sets so that membership becomes convergence."""
from descset import trees as tr
from descset.cantor import ClopenSet, Point
from descset.convergence import Converges
from descset.reductions import DecidablePointSet, glue_verdict, h_image, phi_map, recover_prefix, verify_p1

x = Point("", "01")
print(f"x = {x}. The words leaving x after k steps, coded as numbers:")
print(f"  sibling codes {phi_map(x).first(6)}")
print(f"  step-function indices {h_image(x).first(6)}")
print(f"  and back: the first 8 bits are {recover_prefix(h_image(x), 8)}\n")

A = DecidablePointSet.from_clopen(ClopenSet.of("1"))
print("On A = [1] (minus eventually constant points) the subsequence converges exactly when x is outside A:")
for y in (Point("", "01"), Point("1", "01"), Point("1", "0"), Point("0", "011")):
    print(f"  x={str(y):<8} in A: {A.contains(y)!s:<5}  check holds: {verify_p1(y, A)}")
print()

antichain = tr.OmegaJoin(tr.ConstRule(tr.Single()))
print("Gluing a tree onto a fixed well-founded background:")
for name, T in [("Chain(4)", tr.Chain(4)), ("chains", tr.OmegaJoin(tr.ChainRule(1, 1))), ("with a branch", tr.Join((tr.Chain(2), tr.FullBranch())))]:
    v = glue_verdict(T, antichain)
    print(f"  {name:<14} well-founded {tr.is_wellfounded(T)!s:<5} -> {'converges' if isinstance(v, Converges) else 'diverges'}")
