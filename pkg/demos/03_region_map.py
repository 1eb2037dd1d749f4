# Sweep the exponent square and print the asymptotic region map: which
# closed-form regime governs K(B_p^n, B_q^n) for each (p, q), and the
# decay rate in n that comes with it.

import math

from bohrlab.bounds import rate, region_classify

grid = [1.0, 4 / 3, 2.0, 4.0, math.inf]


def label(x):
    return "inf" if x == math.inf else f"{x:g}"


print("p \\ q " + "".join(f"{label(q):>8}" for q in grid))
for p in grid:
    row = []
    for q in grid:
        rep = region_classify(p, q)
        tag = rep.tag + ("*" if "extrapolated" in rep.flags else "")
        row.append(f"{tag:>8}")
    print(f"{label(p):>6}" + "".join(row))

print("\n(* = outside the proven range, formula extrapolated)")

print("\nrates at n = 100:")
for p, q in [(math.inf, math.inf), (2.0, 2.0), (2.0, math.inf), (4.0, 4 / 3)]:
    rep = region_classify(p, q)
    print(f"  p={label(p):>4} q={label(q):>4}  region {rep.tag:>3}  "
          f"rate(100) = {rate(p, q, 100):.4f}")
