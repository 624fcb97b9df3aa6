"""Separation rank on countable compacta, symbolically and by brute force."""
from fractions import Fraction

from descset.ordinals import OMEGA, ONE, ord_add, to_text
from descset.rank import (
    alpha_on,
    apex_point,
    attaining_copy,
    brute_force_alpha,
    build_rank_example,
    instantiate,
    iterate_derivative,
)

a, b = Fraction(1, 3), Fraction(2, 3)
print("Points where f < 1/3 and f > 2/3 accumulate on each other; the derivative keeps")
print("only such points, and the separation rank counts how long that lasts.\n")

K = build_rank_example(3)
print("A rank-3 example: apex value 0, copies converging to it.")
for k in range(4):
    D = iterate_derivative(K, k, a, b)
    print(f"  after {k} derivatives: empty={D.is_empty()}, apex still present={D.contains(apex_point(''))}")
print(f"  symbolic alpha: {to_text(alpha_on(K, a, b))}")
for depth in (3, 4):
    sample = instantiate(K, depth)
    print(f"  brute force on {len(sample)} explicit points (depth {depth}): {brute_force_alpha(sample, a, b)}")
print()

print("Transfinite ranks come out of the same recursion:")
for xi in (OMEGA, ord_add(OMEGA, ONE), ord_add(OMEGA.mul_nat(2), ONE)):
    try:
        K = build_rank_example(xi, "A3")
    except ValueError as e:
        print(f"  {to_text(xi)}: {e}")
        continue
    print(f"  requested {to_text(xi)}: alpha {to_text(alpha_on(K))}")
print()

K = build_rank_example(4)
k, r = attaining_copy(K)
print(f"The rank is a successor, and copy {k} alone already has rank {to_text(r)}.")
