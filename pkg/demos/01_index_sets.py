# Tour of the multi-index layer: the monomial index set Lambda(m, n),
# its occurrence-map twin J(m, n), and the multinomial bookkeeping that
# every norm and bound in the package rests on.

import math

from bohrlab.multiindex import (
    alpha_to_tuple,
    enumerate_j,
    enumerate_lambda,
    lambda_card,
    multiplicity,
    tuple_to_alpha,
)

m, n = 3, 4

print(f"Lambda({m}, {n}) has {lambda_card(m, n)} elements "
      f"(= C({n + m - 1}, {m}) = {math.comb(n + m - 1, m)})")

print("\nfirst few exponent vectors (colex order) with multiplicities:")
for alpha in list(enumerate_lambda(m, n))[:6]:
    j = alpha_to_tuple(alpha)
    print(f"  alpha={alpha}  j={j}  mult={multiplicity(alpha)}")

# The multiplicities sum to n^m: every length-m word over n letters is
# counted once by its sorted occurrence tuple.
total = sum(multiplicity(a) for a in enumerate_lambda(m, n))
print(f"\nsum of multiplicities = {total} = {n}^{m} = {n ** m}")

# The two enumerations are inverse to each other.
ok = all(alpha_to_tuple(tuple_to_alpha(j, n)) == j for j in enumerate_j(m, n))
print(f"occurrence-map roundtrip on all of J({m}, {n}): {ok}")
