"""Which trinomial curves have inflection points on the torus?

One Hessian polynomial in a single parameter decides it: strip the two
degenerate roots (0 and -1) and look at what is left.  Triangles whose
curves never inflect form four catalogued families; everything else
inflects somewhere, sometimes only at complex points.
"""

from sparsemult import SupportSet, triangle_inflection

EXAMPLES = [
    ("unit simplex (all curves are lines)", [(0, 0), (1, 0), (0, 1)]),
    ("tall sliver", [(0, 0), (1, 0), (0, 5)]),
    ("anti-diagonal cubic", [(0, 0), (2, 1), (1, 2)]),
    ("sheared simplex", [(0, 0), (2, 1), (1, 1)]),
    ("diagonal cubic family", [(0, 0), (3, 0), (0, 3)]),
]

for label, pts in EXAMPLES:
    tc = triangle_inflection(SupportSet(pts))
    print(f"{label}: {pts}")
    print(f"   verdict: {tc.verdict} ({tc.case} route)")
    if tc.verdict == "NoInflection":
        print(f"   catalogue family {tc.family}")
    else:
        print(f"   reduced Hessian factor: {tc.reduced_factor} (non-constant, so a")
        print("   complex parameter value produces an inflection on the torus)")
    print()

print("note: the last two supports are lattice-equivalent to earlier ones,")
print("yet the verdicts differ; only the line-preserving projectivities")
print("(coordinate swap and (i,j) -> (i,-i-j)) preserve inflections")
