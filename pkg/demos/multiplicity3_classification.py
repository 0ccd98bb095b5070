"""Which support pairs admit a triple root?

The decision is a one-liner (mixed volume at most 2 means no), but the
interesting part is the evidence: impossible pairs match an exceptional
catalogue, achievable pairs come with verified witness systems whenever a
rational construction exists, and the one famous holdout is logged with an
exact obstruction.
"""

import json

from sparsemult import SupportSet, decide_mult3
from sparsemult.jsonio import system_to_json

PAIRS = [
    ("unit square vs itself",
     SupportSet([(0, 0), (1, 0), (0, 1), (1, 1)]),
     SupportSet([(0, 0), (1, 0), (0, 1), (1, 1)])),
    ("simplex vs thin quartic triangle",
     SupportSet([(0, 0), (1, 0), (0, 1)]),
     SupportSet([(0, 1), (3, 0), (4, 0)])),
    ("two-point segment vs three vertical levels",
     SupportSet([(0, 0), (1, 0)]),
     SupportSet([(0, 0), (0, 1), (0, 2), (1, 0)])),
    ("the inflection quadrilateral vs itself",
     SupportSet([(0, 0), (1, 0), (0, 1), (-1, -1)]),
     SupportSet([(0, 0), (1, 0), (0, 1), (-1, -1)])),
]

for label, A, B in PAIRS:
    rep = decide_mult3(A, B)
    print(f"{label}: {rep.verdict} (mixed volume {rep.mixed_volume})")
    if rep.verdict == "Impossible":
        print(f"   exceptional family: {rep.family}")
    elif rep.construction is not None:
        print(f"   verified witness, multiplicity {rep.construction.multiplicities[0]}:")
        print(f"   {json.dumps(system_to_json(rep.construction))[:160]}...")
    else:
        print("   achievable over C, but every rational route certifies failure:")
        for line in rep.route_log:
            print(f"     - {line[:110]}")
    print()
