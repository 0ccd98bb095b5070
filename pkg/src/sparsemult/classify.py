"""Decision procedures: inflection admissibility of trinomial supports and
the multiplicity-3 classification of support pairs.

A triangle support admits a torus inflection iff a one-parameter Hessian
polynomial keeps a root after the two degenerate-coefficient roots (0 and
-1) are stripped; existence over C is decided by the degree of the reduced
factor, never by numeric root hunting.  The pair classification rests on
the root-count criterion (mixed volume at most 2) and cross-checks every
impossible verdict against the exceptional-family catalogue.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    LaurentPolynomial,
    UnivariatePolynomial,
    factor_out_roots,
)
from .branches import compute_dim_V
from .construct import (
    DEFAULT_SEED,
    RETRY_BUDGET,
    STANDARD_SIMPLEX,
    ConstructedSystem,
    construct_prescribed,
    construct_univariate,
    _basis_to_simplex_map,
    _draw_through_one,
    _line_contact_on,
)
from .errors import (
    ConstructionFailure,
    HypothesisViolation,
    InputError,
    RetryBudgetExhausted,
)
from .lattice import (
    Point,
    SupportSet,
    UnimodularAffineMap,
    convex_hull,
    cross,
    erode,
    is_segment,
    lattice_points,
    mixed_volume,
    normal_form,
    primitivity_index,
    stabilizer,
    unimodular_triple,
)

# the line-preserving monomial projectivities: coordinate swap and
# (i, j) -> (i, -i-j), generating an order-6 group of exponent maps
_SWAP = ((0, 1), (1, 0))
_TAU = ((1, 0), (-1, -1))


def _group_elements() -> List[UnimodularAffineMap]:
    gens = [UnimodularAffineMap(((1, 0), (0, 1))), UnimodularAffineMap(_SWAP), UnimodularAffineMap(_TAU)]
    seen = {}
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        if g.matrix in seen:
            continue
        seen[g.matrix] = g
        for h in gens[1:]:
            frontier.append(g.compose(h))
    return [seen[m] for m in sorted(seen)]


PROJECTIVE_GROUP = _group_elements()


def hessian_at_one(n: int, m: int, k: int, l: int) -> UnivariatePolynomial:
    """Bordered-Hessian determinant at (1, 1) for the one-parameter family
    of trinomials on the triangle {(0,0), (n,m), (k,l)}.

    The family is 1 + a*x^n*y^m - (1+a)*x^k*y^l, so the value at a is the
    Hessian of the member with parameter a.  The anchor identities
    He(0) = -k*l*(k+l) and He(-1) = -m*n*(m+n) are asserted on every call.
    """
    if n * l - m * k == 0:
        raise InputError("collinear triangle")
    var = "a"
    A = UnivariatePolynomial([0, 1], var)
    B = UnivariatePolynomial([-1, -1], var)

    def comb(c1, c2):
        return A * c1 + B * c2

    fx = comb(n, k)
    fy = comb(m, l)
    fxx = comb(n * (n - 1), k * (k - 1))
    fyy = comb(m * (m - 1), l * (l - 1))
    fxy = comb(n * m, k * l)
    he = fx * fy * fxy * 2 - fx * fx * fyy - fy * fy * fxx
    if he(Fraction(0)) != -k * l * (k + l) or he(Fraction(-1)) != -m * n * (m + n):
        raise AssertionError("Hessian anchor identities failed")
    return he


def theta_poly(n: int, m: int, k: int) -> UnivariatePolynomial:
    """Reduced Hessian for a triangle in the axis-aligned position
    {(n,0), (m,0), (0,k)}: the full Hessian is (1+a)*k*Theta(a)."""
    var = "a"
    lin1 = UnivariatePolynomial([n, m], var)  # n + a m
    one_plus = UnivariatePolynomial([1, 1], var)
    t1 = lin1 * lin1 * (k - 1)
    t2 = one_plus * UnivariatePolynomial([n * (n - 1), m * (m - 1)], var) * k
    return t1 - t2


@dataclass
class TriangleClass:
    triangle: SupportSet
    verdict: str  # "NoInflection" | "HasInflection"
    family: Optional[int] = None
    witness_map: Optional[UnimodularAffineMap] = None
    decision_poly: Optional[UnivariatePolynomial] = None
    reduced_factor: Optional[UnivariatePolynomial] = None
    case: str = ""


_SPECIAL_DIRS = ((1, 0), (0, 1), (1, -1))


def _edge_directions(pts: Sequence[Point]) -> List[Point]:
    out = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            out.append((pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]))
    return out


def _is_special(d: Point) -> bool:
    return d[0] == 0 or d[1] == 0 or d[0] + d[1] == 0


def triangle_inflection(T: SupportSet) -> TriangleClass:
    """Decide whether curves supported at a lattice triangle admit an
    inflection point on the complex torus.

    Generic triangles are decided by the Hessian family directly; triangles
    with a horizontal, vertical or anti-diagonal edge are first moved to an
    axis-aligned position by line-preserving monomial projectivities and
    decided through the reduced factor.  The verdict only depends on the
    orbit of the triangle under those projectivities.
    """
    pts = T.sorted_points()
    if len(pts) != 3:
        raise InputError("triangle support needs exactly 3 points")
    if cross(pts[0], pts[1], pts[2]) == 0:
        raise InputError("collinear input")

    dirs = _edge_directions(pts)
    if not any(_is_special(d) for d in dirs):
        base = pts[0]
        (n, m) = (pts[1][0] - base[0], pts[1][1] - base[1])
        (k, l) = (pts[2][0] - base[0], pts[2][1] - base[1])
        he = hessian_at_one(n, m, k, l)
        reduced, _ = factor_out_roots(he, [Fraction(0), Fraction(-1)])
        case = "generic"
        decision = he
    else:
        n, m, k = _axis_position(pts)
        decision = theta_poly(n, m, k)
        reduced, _ = factor_out_roots(decision, [Fraction(0), Fraction(-1)]) if not decision.is_zero() else (decision, (0, 0))
        case = "axis-aligned"

    if not reduced.is_zero() and reduced.degree() >= 1:
        return TriangleClass(
            triangle=T,
            verdict="HasInflection",
            decision_poly=decision,
            reduced_factor=reduced,
            case=case,
        )
    family, wmap = _match_triangle_family(T)
    if family is None:
        raise AssertionError(
            f"no-inflection triangle {pts} matches no catalogued family"
        )
    return TriangleClass(
        triangle=T,
        verdict="NoInflection",
        family=family,
        witness_map=wmap,
        decision_poly=decision,
        reduced_factor=reduced,
        case=case,
    )


def _axis_position(pts: Sequence[Point]) -> Tuple[int, int, int]:
    """Move a triangle with a special edge to {(n,0), (m,0), (0,k)} using
    only line-preserving projectivities and translations."""
    cur = list(pts)
    for g in PROJECTIVE_GROUP:
        img = [g.apply(p) for p in cur]
        for i in range(3):
            for j in range(i + 1, 3):
                if img[i][1] == img[j][1]:
                    third = [img[t] for t in range(3) if t not in (i, j)][0]
                    dy = img[i][1]
                    n = img[i][0] - third[0]
                    m = img[j][0] - third[0]
                    k = third[1] - dy
                    if k != 0 and n != m:
                        return n, m, k
    raise AssertionError("special edge vanished under the projective group")


def _match_triangle_family(T: SupportSet) -> Tuple[Optional[int], Optional[UnimodularAffineMap]]:
    """Match a triangle against the four no-inflection families, up to the
    line-preserving projectivities and translations.

    Families can overlap; the smallest matching family index is reported.
    """
    pts = T.sorted_points()

    def fam14(img, want):
        for base_idx in range(3):
            base = img[base_idx]
            others = [img[i] for i in range(3) if i != base_idx]
            d = [(o[0] - base[0], o[1] - base[1]) for o in others]
            for d1, d2 in (d, d[::-1]):
                if want == 1 and d1 == (1, 0) and d2[0] == 0 and d2[1] != 0:
                    return True
                if want == 4 and d1[1] == 0 and d2[0] == 0 and d1[0] == d2[1] and d1[0] != 0:
                    return True
        return False

    def fam23(img, want):
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                third = [img[t] for t in range(3) if t not in (i, j)][0]
                if img[i][1] != img[j][1] or third[1] != img[i][1] + 1:
                    continue
                a = img[i][0] - third[0]
                b = img[j][0] - third[0]
                if want == 2 and a + b == 1:
                    return True
                if want == 3 and (a == 1 or b == 1):
                    return True
        return False

    for fam in (1, 2, 3, 4):
        for g in PROJECTIVE_GROUP:
            img = [g.apply(p) for p in pts]
            hit = fam14(img, fam) if fam in (1, 4) else fam23(img, fam)
            if hit:
                return fam, g
    return None, None


# ---------------------------------------------------------------------------
# the multiplicity-3 classification of pairs


@dataclass
class Mult3Report:
    A: SupportSet
    B: SupportSet
    mixed_volume: int
    verdict: str  # "Impossible" | "Achievable"
    family: Optional[Dict[str, object]] = None
    construction: Optional[ConstructedSystem] = None
    route: Optional[str] = None
    route_log: List[str] = field(default_factory=list)


def _segment_measurements(S: SupportSet, Q: SupportSet) -> Tuple[int, int]:
    """(h, v) for a segment support S against Q, after rotating S horizontal.

    h is the lattice length of S's hull plus one, v the lattice point count
    of Q's projection interval along the segment direction.  Extents (not
    sparse point counts) are what the root-count criterion sees: roots off
    the torus can exhaust the full exponent gap of a sparse support.
    """
    canonS, M = normal_form(S)
    h = max(p[0] for p in canonS) - min(p[0] for p in canonS) + 1
    img = M.apply_set(Q)
    levels = [p[1] for p in img]
    v = max(levels) - min(levels) + 1
    return h, v


def match_exceptional_family(A: SupportSet, B: SupportSet) -> Optional[Dict[str, object]]:
    """Membership of (A, B) in the no-multiplicity-3 catalogue, up to
    monomial changes of variables and transposition of the pair.

    Family 1: one support on a segment, measured by (h, v) with
    (h-1)(v-1) <= 2.  Family 2: equal full-dimensional supports equivalent,
    by one common map, to the unit square or to the four-point L.  Family
    3: one support a unimodular triangle and the other inside a doubled
    simplex under the same map.
    """
    if len(A) == 0 or len(B) == 0:
        raise InputError("empty support")

    if is_segment(A) or is_segment(B):
        for X, Y, orient in ((A, B, "as-given"), (B, A, "transposed")):
            if not is_segment(X):
                continue
            h, v = _segment_measurements(X, Y)
            if (h - 1) * (v - 1) <= 2:
                return {"family": 1, "h": h, "v": v, "orientation": orient}
        return None
    # both full-dimensional from here on

    canon_A, M_A = normal_form(A)
    canon_B, M_B = normal_form(B)
    for rep_name, canon_rep, stab in _family2_data():
        if canon_A != canon_rep or canon_B != canon_rep:
            continue
        rel = M_A.compose(M_B.inverse())
        if rel.matrix in stab:
            return {"family": 2, "shape": rep_name}

    two_simplex, canon_simplex, M_simplex, simplex_stab = _family3_data()
    for (canon_X, M_X), Y, orient in (
        ((canon_A, M_A), B, "as-given"),
        ((canon_B, M_B), A, "transposed"),
    ):
        if canon_X != canon_simplex:
            continue
        to_simplex = M_simplex.inverse().compose(M_X)
        for s in simplex_stab:
            img = s.apply_set(to_simplex.apply_set(Y))
            if _fits_in(img, two_simplex):
                return {"family": 3, "orientation": orient}
    return None


_FAMILY_CACHE: Dict[str, object] = {}


def _family2_data():
    if "f2" not in _FAMILY_CACHE:
        data = []
        for rep_name, rep in (
            ("unit-square", SupportSet([(0, 0), (1, 0), (0, 1), (1, 1)])),
            ("four-point-L", SupportSet([(0, 0), (1, 0), (0, 1), (2, 0)])),
        ):
            canon_rep, _ = normal_form(rep)
            stab = {s.matrix for s in stabilizer(canon_rep)}
            data.append((rep_name, canon_rep, stab))
        _FAMILY_CACHE["f2"] = data
    return _FAMILY_CACHE["f2"]


def _family3_data():
    if "f3" not in _FAMILY_CACHE:
        two_simplex = lattice_points(convex_hull(SupportSet([(0, 0), (2, 0), (0, 2)])))
        canon_simplex, M_simplex = normal_form(STANDARD_SIMPLEX)
        _FAMILY_CACHE["f3"] = (
            two_simplex,
            canon_simplex,
            M_simplex,
            stabilizer(STANDARD_SIMPLEX),
        )
    return _FAMILY_CACHE["f3"]


def _fits_in(S: SupportSet, region: SupportSet) -> bool:
    """Can S be translated into the point set ``region``."""
    rpts = region.points
    r0 = min(rpts)
    s_pts = S.sorted_points()
    rx0, ry0, rx1, ry1 = (
        min(p[0] for p in rpts),
        min(p[1] for p in rpts),
        max(p[0] for p in rpts),
        max(p[1] for p in rpts),
    )
    sx0 = min(p[0] for p in s_pts)
    sy0 = min(p[1] for p in s_pts)
    sx1 = max(p[0] for p in s_pts)
    sy1 = max(p[1] for p in s_pts)
    for tx in range(rx0 - sx0, rx1 - sx1 + 1):
        for ty in range(ry0 - sy0, ry1 - sy1 + 1):
            if all((p[0] + tx, p[1] + ty) in rpts for p in s_pts):
                return True
    return False


def _mult3_witness_routes(
    A: SupportSet, B: SupportSet, seed: int = DEFAULT_SEED, retries: int = RETRY_BUDGET
) -> Tuple[Optional[ConstructedSystem], List[str]]:
    """Try the constructive routes for a verified multiplicity-3 witness.

    Route order: prescribed osculation (both orientations), contact with a
    line (the line living in whichever support holds a unimodular triangle),
    and the univariate route for segment pairs.  The log records, for every
    applicable route, either success or the exact reason it cannot work.
    """
    log: List[str] = []

    # route (i): prescribed contact when the pairing bound allows m = 3
    for X, Y, orient in ((A, B, "(A,B)"), (B, A, "(B,A)")):
        if is_segment(X) or is_segment(Y):
            continue
        if primitivity_index(X, Y) != 1:
            log.append(f"route i {orient}: inapplicable (sublattice pair)")
            continue
        d_est = len(X) - len(erode(convex_hull(X), Y)) - 1
        rng = random.Random(seed)
        probe = _draw_through_one(Y, rng)
        d_actual = d_est
        if probe is not None:
            dim_v, _ = compute_dim_V(X, probe)
            d_actual = max(d_est, len(X) - dim_v - 1)
        if d_actual < 3:
            log.append(f"route i {orient}: inapplicable (contact bound D={d_actual} < 3)")
            continue
        try:
            system = construct_prescribed(X, Y, 3, seed=seed, retries=retries)
            log.append(f"route i {orient}: witness found")
            return system, log
        except (HypothesisViolation, RetryBudgetExhausted) as exc:
            log.append(f"route i {orient}: failed ({exc})")

    # route (ii): order-3 contact with a line supported in the other member
    for X, Y, orient in ((A, B, "line in A"), (B, A, "line in B")):
        triple = unimodular_triple(X)
        if triple is None:
            log.append(f"route ii {orient}: inapplicable (no unimodular triangle)")
            continue
        if len(Y) < 3:
            log.append(f"route ii {orient}: inapplicable (curve support below contact order)")
            continue
        M = _basis_to_simplex_map(*triple)
        Ynorm = M.apply_set(Y)
        try:
            system = _line_contact_on(Ynorm, 3, seed, retries)
            system.normalization = M
            log.append(f"route ii {orient}: witness found")
            return system, log
        except ConstructionFailure as exc:
            log.append(f"route ii {orient}: certified failure ({exc})")
        except (HypothesisViolation, RetryBudgetExhausted) as exc:
            log.append(f"route ii {orient}: failed ({exc})")

    # route (iii): segment pairs via sparse univariate multiplicities
    for X, Y, orient in ((A, B, "segment A"), (B, A, "segment B")):
        if not is_segment(X):
            continue
        system = _segment_route(X, Y, orient, log)
        if system is not None:
            return system, log
    return None, log


def _segment_route(X: SupportSet, Y: SupportSet, orient: str, log: List[str]):
    from .verify import segment_product_multiplicity

    _, M = normal_form(X)
    Xn, Yn = M.apply_set(X), M.apply_set(Y)
    x_exps = sorted(p[0] for p in Xn)
    # the univariate constructions need point counts, not extents
    h = len(x_exps)
    v = len({p[1] for p in Yn})
    if h >= 4:
        # triple root in the segment variable, simple in the other
        p_poly = construct_univariate(x_exps, 3)
        shift = -min(min(x_exps), 0)
        f = LaurentPolynomial(
            {(e, 0): p_poly.coefficient(e + shift) for e in x_exps if p_poly.coefficient(e + shift) != 0}
        )
        # simple vertical crossing through (1, 1)
        levels = sorted({p[1] for p in Yn})
        reps = {lvl: min(p[0] for p in Yn if p[1] == lvl) for lvl in levels}
        if len(levels) < 2:
            log.append(f"route iii {orient}: inapplicable (flat second support)")
            return None
        l0, l1 = levels[:2]
        g = LaurentPolynomial({(reps[l0], l0): Fraction(1), (reps[l1], l1): Fraction(-1)})
        total, cert = segment_product_multiplicity(f, g, (Fraction(1), Fraction(1)), True)
        if total == 3:
            log.append(f"route iii {orient}: witness found (h side)")
            system = ConstructedSystem(
                f=f, g=g, points=((Fraction(1), Fraction(1)),), multiplicities=(3,),
                seed=0, retries_used=0, exact=True, certificate=cert,
            )
            system.normalization = M
            return system
        log.append(f"route iii {orient}: product came out {total}")
        return None
    if v >= 4:
        levels = sorted({p[1] for p in Yn})
        reps = {lvl: min(p[0] for p in Yn if p[1] == lvl) for lvl in levels}
        q_poly = construct_univariate(levels, 3)
        shift = -min(min(levels), 0)
        g_terms = {}
        for lvl in levels:
            c = q_poly.coefficient(lvl + shift)
            if c != 0:
                g_terms[(reps[lvl], lvl)] = c
        g = LaurentPolynomial(g_terms)
        f = LaurentPolynomial({(x_exps[0], 0): Fraction(1), (x_exps[1], 0): Fraction(-1)})
        total, cert = segment_product_multiplicity(f, g, (Fraction(1), Fraction(1)), True)
        if total == 3:
            log.append(f"route iii {orient}: witness found (v side)")
            system = ConstructedSystem(
                f=f, g=g, points=((Fraction(1), Fraction(1)),), multiplicities=(3,),
                seed=0, retries_used=0, exact=True, certificate=cert,
            )
            system.normalization = M
            return system
        log.append(f"route iii {orient}: product came out {total}")
        return None
    log.append(f"route iii {orient}: inapplicable (h={h}, v={v} both below 4)")
    return None


def _is_convex_support(S: SupportSet) -> bool:
    """True when S is exactly the lattice points of its hull."""
    hull = convex_hull(S)
    if hull.dim == 0:
        return True
    if hull.dim == 1:
        (a, b) = hull.vertices
        from math import gcd

        return len(S) == gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) + 1
    return lattice_points(hull) == S


def decide_mult3(
    A: SupportSet, B: SupportSet, seed: int = DEFAULT_SEED, retries: int = RETRY_BUDGET
) -> Mult3Report:
    """Classify a support pair by whether multiplicity 3 is achievable.

    The verdict is the root-count criterion: impossible iff the mixed
    volume of the hulls is at most 2.  For supports that are the full
    lattice-point sets of their hulls the criterion is exact in both
    directions; sparser supports get the same hull-based verdict.
    Impossible verdicts are cross-checked against the exceptional-family
    catalogue; achievable verdicts come with a verified witness whenever
    one of the constructive routes succeeds over Q.
    """
    mv = mixed_volume(convex_hull(A), convex_hull(B))
    if mv <= 2:
        fam = match_exceptional_family(A, B)
        if fam is None:
            if _is_convex_support(A) and _is_convex_support(B):
                raise AssertionError(
                    f"convex pair with mixed volume {mv} matched no exceptional family"
                )
            fam = {"family": None, "note": "non-convex support outside the catalogue"}
        return Mult3Report(A=A, B=B, mixed_volume=mv, verdict="Impossible", family=fam)
    system, log = _mult3_witness_routes(A, B, seed=seed, retries=retries)
    route = None
    if system is not None:
        route = next((entry for entry in log if "witness found" in entry), None)
    return Mult3Report(
        A=A,
        B=B,
        mixed_volume=mv,
        verdict="Achievable",
        construction=system,
        route=route,
        route_log=log,
    )


def enumerate_four_point_bodies() -> List[SupportSet]:
    """All four-point full-dimensional convex supports containing a
    unimodular triangle, with at most one interior hull point, as normal
    forms in a deterministic order.

    The Pick bound (boundary 4 - i, interior i <= 1) caps the hull area at
    3/2, so a bounded scan of the fourth point is exhaustive.
    """
    found: Dict[Tuple[Point, ...], SupportSet] = {}
    simplex = [(0, 0), (1, 0), (0, 1)]
    for vx in range(-5, 7):
        for vy in range(-5, 7):
            v = (vx, vy)
            if v in simplex:
                continue
            S = SupportSet(simplex + [v])
            hull = convex_hull(S)
            if hull.dim != 2:
                continue
            if lattice_points(hull) != S:
                continue
            from .lattice import pick_counts

            interior, boundary = pick_counts(hull)
            if interior > 1:
                continue
            if max(abs(vx), abs(vy)) >= 5:
                raise AssertionError("scan box for fourth points is too small")
            canon, _ = normal_form(S)
            found[canon.sorted_points()] = canon
    return [found[k] for k in sorted(found)]
