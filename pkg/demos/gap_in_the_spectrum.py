"""A support pair whose multiplicity spectrum skips a value.

For A = {(0,0), (1,0), (0,1), ..., (0,n)} against B = {(0,0), (0,1), (1,0),
(2,0)} with n odd, roots of multiplicity 1 through n+1 exist and so do all
even values up to 2n, but n+2 is unreachable: the composed equation forces
its coefficients into a sign-alternating pattern governed by a positive
integer recursion.
"""

from sparsemult import (
    build_gap_family_member,
    gap_family_achievable_set,
    gap_family_phi,
    gap_family_supports,
    intersection_multiplicity_smooth,
    segment_product_multiplicity,
)

n = 3
A, B = gap_family_supports(n)
print(f"n = {n}:  A = {list(A)},  B = {list(B)}")
print(f"expected achievable set: {gap_family_achievable_set(n)}\n")

for m in range(1, 2 * n + 1):
    kind, payload = build_gap_family_member(n, m)
    if kind == "system":
        if payload["route"] == "triangular":
            got = intersection_multiplicity_smooth(payload["f_A"], payload["f_B"], payload["point"])
        else:
            got = segment_product_multiplicity(payload["f_B"], payload["f_A"], payload["point"])
        print(f"m = {m}: realized via the {payload['route']} route, verified order {got}")
        print(f"   f_A = {payload['f_A']}")
        print(f"   f_B = {payload['f_B']}\n")
    else:
        print(f"m = {m}: impossible; obstruction sequence {payload.transcript['phi']} "
              "stays positive\n")

print(f"recursion values: {gap_family_phi(8)} (each a positive convolution)")
