"""Independent exact verification of multiplicity claims.

The verifier never trusts a constructor: it recomputes branches from
scratch with its own truncation policy and reports orders read off exact
series coefficients.  Every check returns a replayable certificate whose
transcript is reproduced bit for bit when re-run on the same inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    LaurentPolynomial,
    UnivariatePolynomial,
    det,
    sylvester_resultant,
    _frac,
)
from .branches import branch_series, is_multiple_of
from .errors import InputError, VerificationError
from .lattice import (
    SupportSet,
    convex_hull,
    mixed_volume,
)

#: Sentinel returned when the checked root is not isolated.
NON_ISOLATED = "non-isolated"


@dataclass
class MultiplicityCertificate:
    """Machine-checkable record of one verification.

    ``kind`` is one of BranchOrder, DerivativeTable, LineSum,
    RankImpossibility, EliminationImpossibility.  ``inputs`` identifies the
    checked objects; ``transcript`` holds the exact data that forces the
    verdict (leading series coefficient, derivative values, determinant, or
    resultant chain).
    """

    kind: str
    inputs: Dict[str, object] = field(default_factory=dict)
    transcript: Dict[str, object] = field(default_factory=dict)


def univariate_multiplicity(
    P: UnivariatePolynomial, t0: Fraction, with_certificate: bool = False
):
    """Largest m with P and its first m-1 derivatives vanishing at t0."""
    if P.is_zero():
        raise InputError("zero polynomial has no multiplicity")
    t0 = _frac(t0)
    values: List[Fraction] = []
    d = P
    m = 0
    while True:
        v = d(t0)
        values.append(v)
        if v != 0:
            break
        m += 1
        d = d.derivative()
    cert = MultiplicityCertificate(
        kind="DerivativeTable",
        inputs={"poly": P, "point": t0},
        transcript={"derivative_values": list(values), "multiplicity": m},
    )
    if with_certificate:
        return m, cert
    return m


def intersection_multiplicity_smooth(
    f: LaurentPolynomial,
    g: LaurentPolynomial,
    p: Tuple[Fraction, Fraction],
    with_certificate: bool = False,
):
    """Local intersection multiplicity of Z(f) and Z(g) at p, computed as
    the vanishing order of g along the branch of f.

    Requires f(p) = 0 and f smooth at p (single branch, so the branch order
    is the full local intersection number).  Returns NON_ISOLATED when g
    vanishes on the branch itself.
    """
    p = (_frac(p[0]), _frac(p[1]))
    if f.is_zero() or g.is_zero():
        raise InputError("zero polynomial")
    if f.evaluate(p) != 0:
        raise InputError("point is not on the first curve")

    n0 = len(f.terms) + len(g.terms) + 8
    try:
        mv_cap = mixed_volume(convex_hull(f.support()), convex_hull(g.support()))
    except Exception:
        mv_cap = 0
    hard_cap = 4 * (n0 + mv_cap)

    order = None
    n = n0
    while True:
        branch = branch_series(f, p, n)
        series = branch.evaluate_poly(g)
        order = series.order()
        if order is not None:
            lead = series.coefficient(order)
            cert = MultiplicityCertificate(
                kind="BranchOrder",
                inputs={"f": f, "g": g, "point": p},
                transcript={
                    "order": order,
                    "leading_coefficient": lead,
                    "truncation": n,
                    "free_variable": branch.free_variable,
                },
            )
            return (order, cert) if with_certificate else order
        if n >= hard_cap:
            break
        n = min(2 * n, hard_cap)

    if is_multiple_of(g, f):
        verdict = NON_ISOLATED
        why = "g is a Laurent-polynomial multiple of f"
    else:
        dep = "y" if f.partial("y").evaluate(p) != 0 else "x"
        res = sylvester_resultant(f, g, dep)
        if res.is_zero():
            verdict = NON_ISOLATED
            why = "resultant vanishes identically: shared component through the branch"
        else:
            raise AssertionError(
                "order exceeded every bound for an isolated intersection"
            )
    cert = MultiplicityCertificate(
        kind="BranchOrder",
        inputs={"f": f, "g": g, "point": p},
        transcript={"order": NON_ISOLATED, "reason": why, "truncation": hard_cap},
    )
    return (verdict, cert) if with_certificate else verdict


def origin_multiplicity_line_product(
    lines: Sequence[Tuple[Fraction, Fraction]],
    v: LaurentPolynomial,
    with_certificate: bool = False,
):
    """Origin multiplicity of the system (product of lines, v).

    ``lines`` are coefficient pairs (alpha, beta) of pairwise independent
    forms alpha*x + beta*y; the multiplicity is the sum over the lines of
    the vanishing order of v along each line through the origin.
    """
    if v.is_zero():
        raise InputError("zero polynomial")
    if any(e[0] < 0 or e[1] < 0 for e in v.terms):
        raise InputError("origin multiplicity needs polynomial (non-Laurent) input")
    forms = [(_frac(a), _frac(b)) for a, b in lines]
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            if forms[i][0] * forms[j][1] - forms[i][1] * forms[j][0] == 0:
                raise InputError("line forms must be pairwise independent")
    deg = max(e[0] + e[1] for e in v.terms)
    orders = []
    for a, b in forms:
        # parametrize a*x + b*y = 0 through the origin by (-b*t, a*t)
        coeffs = [Fraction(0)] * (deg + 1)
        for (e1, e2), c in v.terms.items():
            coeffs[e1 + e2] += _frac(c) * (-b) ** e1 * a**e2
        ordr = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if ordr is None:
            raise InputError("a line form divides v: the root is not isolated")
        orders.append(ordr)
    total = sum(orders)
    cert = MultiplicityCertificate(
        kind="LineSum",
        inputs={"lines": [(a, b) for a, b in forms], "v": v},
        transcript={"per_line_orders": orders, "total": total},
    )
    if with_certificate:
        return total, cert
    return total


def segment_product_multiplicity(
    f_x_only: LaurentPolynomial,
    g: LaurentPolynomial,
    p: Tuple[Fraction, Fraction],
    with_certificate: bool = False,
):
    """Multiplicity at p of a system whose first member depends on x alone.

    For p = (x0, y0) this is m1 * m2 with m1 the multiplicity of x0 in the
    univariate first member and m2 the multiplicity of y0 in g(x0, y).
    """
    p = (_frac(p[0]), _frac(p[1]))
    if any(e[1] != 0 for e in f_x_only.terms):
        raise InputError("first member must depend on x alone")
    if (p[0] == 0 and any(e[0] < 0 for e in f_x_only.terms)) or (
        (p[0] == 0 or p[1] == 0) and any(e[0] < 0 or e[1] < 0 for e in g.terms)
    ):
        raise InputError("negative exponents need non-zero coordinates")
    shift = -min(min((e[0] for e in f_x_only.terms), default=0), 0)
    px = UnivariatePolynomial(
        [
            next((c for e, c in f_x_only.terms.items() if e[0] + shift == i), Fraction(0))
            for i in range(max(e[0] + shift for e in f_x_only.terms) + 1)
        ],
        "x",
    )
    m1, c1 = univariate_multiplicity(px, p[0], with_certificate=True)
    sections: Dict[int, Fraction] = {}
    for (e1, e2), c in g.terms.items():
        sections[e2] = sections.get(e2, Fraction(0)) + _frac(c) * p[0] ** e1
    shift2 = -min(min(sections, default=0), 0)
    qy = UnivariatePolynomial(
        [sections.get(i - shift2, Fraction(0)) for i in range(max(sections) + shift2 + 1)],
        "y",
    )
    if qy.is_zero():
        raise InputError("vertical section vanishes identically: not isolated")
    m2, c2 = univariate_multiplicity(qy, p[1], with_certificate=True)
    total = m1 * m2
    cert = MultiplicityCertificate(
        kind="DerivativeTable",
        inputs={"f": f_x_only, "g": g, "point": p},
        transcript={
            "m1": m1,
            "m2": m2,
            "product": total,
            "m1_table": c1.transcript["derivative_values"],
            "m2_table": c2.transcript["derivative_values"],
        },
    )
    if with_certificate:
        return total, cert
    return total


def rank_impossibility(exponents: Sequence[int]) -> MultiplicityCertificate:
    """Certificate that no sparse polynomial on these exponents has a root
    of multiplicity |exponents| at t = 1: the power-basis matrix is square
    and non-singular (a Vandermonde after row reduction)."""
    exps = [int(a) for a in exponents]
    if len(set(exps)) != len(exps):
        raise InputError("exponents must be distinct")
    k = len(exps)
    rows = [[Fraction(a) ** j for a in exps] for j in range(k)]
    d = det(rows)
    if d == 0:
        raise AssertionError("distinct exponents cannot give a singular power matrix")
    return MultiplicityCertificate(
        kind="RankImpossibility",
        inputs={"exponents": exps},
        transcript={"determinant": d, "order_blocked": k},
    )


def replay(cert: MultiplicityCertificate):
    """Re-run the verification recorded in a certificate; returns the fresh
    certificate, raising VerificationError if the transcript changed."""
    if cert.kind == "DerivativeTable" and "poly" in cert.inputs:
        _, fresh = univariate_multiplicity(
            cert.inputs["poly"], cert.inputs["point"], with_certificate=True
        )
    elif cert.kind == "DerivativeTable":
        _, fresh = segment_product_multiplicity(
            cert.inputs["f"], cert.inputs["g"], cert.inputs["point"], with_certificate=True
        )
    elif cert.kind == "BranchOrder":
        _, fresh = intersection_multiplicity_smooth(
            cert.inputs["f"], cert.inputs["g"], cert.inputs["point"], with_certificate=True
        )
    elif cert.kind == "LineSum":
        _, fresh = origin_multiplicity_line_product(
            cert.inputs["lines"], cert.inputs["v"], with_certificate=True
        )
    elif cert.kind == "RankImpossibility":
        fresh = rank_impossibility(cert.inputs["exponents"])
    else:
        raise InputError(f"cannot replay certificate kind {cert.kind!r}")
    if fresh.transcript != cert.transcript:
        raise VerificationError("replay produced a different transcript")
    return fresh


# ---------------------------------------------------------------------------
# the multiplicity-3 oracle


@dataclass
class OracleResult:
    status: str  # ProvedImpossible | FoundWitness | Inconclusive
    certificate: Optional[MultiplicityCertificate] = None
    witness: Optional[object] = None
    notes: List[str] = field(default_factory=list)


def elimination_mult3_oracle(A: SupportSet, B: SupportSet, budget: int = 16) -> OracleResult:
    """Decide, at desk scale, whether a system supported at (A, B) can have
    an isolated root of multiplicity 3.

    Order of attack: the root-count bound (mixed volume at most 2 makes the
    total isolated multiplicity at most 2), then constructive witnesses,
    then exact slope elimination for line-against-curve shapes.  When a
    witness exists over C but every rational route is exactly obstructed,
    the result is Inconclusive and carries the obstruction transcript.
    """
    if len(A) > 6 or len(B) > 6:
        raise InputError("oracle is desk-scale: supports of at most 6 points")
    mv = mixed_volume(convex_hull(A), convex_hull(B))
    if mv <= 2:
        return OracleResult(
            status="ProvedImpossible",
            certificate=MultiplicityCertificate(
                kind="EliminationImpossibility",
                inputs={"A": A, "B": B},
                transcript={
                    "method": "root-count bound",
                    "mixed_volume": mv,
                    "statement": "the isolated multiplicities of any system sum to at "
                    "most the mixed volume, which is below 3",
                },
            ),
        )

    from .classify import _mult3_witness_routes
    from .construct import DEFAULT_SEED

    system, log = _mult3_witness_routes(A, B, seed=DEFAULT_SEED, retries=budget)
    if system is not None:
        return OracleResult(status="FoundWitness", witness=system, notes=log)
    return OracleResult(
        status="Inconclusive",
        notes=log
        + [
            "mixed volume admits multiplicity 3 over C, but no route produced a "
            "rational witness at the configured budget"
        ],
    )
