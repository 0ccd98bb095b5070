"""Constructors: univariate sparse roots, osculants, line contact, and the
worked families.  Every derived value is recomputed by an oracle in-test."""

import random
from fractions import Fraction as F

import pytest

from sparsemult.algebra import LaurentPolynomial, TruncatedSeries, UnivariatePolynomial
from sparsemult.branches import branch_series, compute_dim_V, osculating_matrix
from sparsemult.construct import (
    ImpossibilityCertificate,
    build_gap_family_member,
    build_line_product_system,
    construct_multipoint,
    construct_prescribed,
    construct_univariate,
    gap_family_achievable_set,
    gap_family_phi,
    gap_family_supports,
    line_contact_construct,
)
from sparsemult.errors import (
    ConstructionFailure,
    HypothesisViolation,
    InputError,
)
from sparsemult.lattice import SupportSet, convex_hull, lattice_points
from sparsemult.verify import (
    intersection_multiplicity_smooth,
    segment_product_multiplicity,
    univariate_multiplicity,
)

SIMPLEX = SupportSet([(0, 0), (1, 0), (0, 1)])
SQUARE = SupportSet([(0, 0), (1, 0), (0, 1), (1, 1)])


# --- univariate ---------------------------------------------------------------


def test_univariate_013_l2():
    p = construct_univariate([0, 1, 3], 2)
    # oracle: the two linear conditions solved by hand give (2, -3, 1),
    # i.e. (t - 1)^2 (t + 2)
    assert p == UnivariatePolynomial([2, -3, 0, 1])
    factored = UnivariatePolynomial([-1, 1]) ** 2 * UnivariatePolynomial([2, 1])
    assert p == factored
    assert univariate_multiplicity(p, F(1)) == 2


def test_univariate_l0_nonvanishing_full_support():
    p = construct_univariate([0, 1], 0)
    assert p(F(1)) != 0
    assert p.degree() == 1 and all(c != 0 for c in p.coeffs)


def test_univariate_impossibility_certificate():
    cert = construct_univariate([0, 1, 3, 7], 4)
    assert isinstance(cert, ImpossibilityCertificate)
    assert cert.kind == "RankImpossibility"
    # Vandermonde product oracle: (1)(3)(7)(2)(6)(4)
    assert cert.transcript["determinant"] == 1 * 3 * 7 * 2 * 6 * 4 == 1008


def test_univariate_negative_exponents():
    p = construct_univariate([-2, 0, 3], 2)
    assert univariate_multiplicity(p, F(1)) == 2


def test_univariate_all_multiplicities():
    for exps in ([0, 1, 3, 7], [0, 2, 5], [-1, 1, 4, 6, 9]):
        for l in range(len(exps)):
            p = construct_univariate(exps, l)
            assert univariate_multiplicity(p, F(1)) == l


def test_univariate_power_matrix_never_singular():
    # exhaustive for small sizes, sampled for the rest, exponents in [0, 20]
    from itertools import combinations
    from sparsemult.algebra import det

    for k in (2, 3):
        for exps in combinations(range(0, 21), k):
            rows = [[F(a) ** j for a in exps] for j in range(k)]
            assert det(rows) != 0
    rng = random.Random(23)
    for _ in range(200):
        k = rng.randint(4, 7)
        exps = rng.sample(range(0, 21), k)
        rows = [[F(a) ** j for a in exps] for j in range(k)]
        assert det(rows) != 0


# --- branches -----------------------------------------------------------------


def test_branch_linear():
    f = LaurentPolynomial({(1, 0): 1, (0, 1): 1, (0, 0): -2})
    br = branch_series(f, (F(1), F(1)), 5)
    assert br.y_series.coeffs == (F(1), F(-1), 0, 0, 0, 0)


def test_branch_parabola():
    f = LaurentPolynomial({(0, 1): 1, (2, 0): -1})
    br = branch_series(f, (F(1), F(1)), 3)
    assert br.y_series.coeffs == (F(1), F(2), F(1), F(0))


def test_branch_hyperbola_vs_series_oracle():
    f = LaurentPolynomial({(1, 1): 1, (0, 0): -1})
    br = branch_series(f, (F(1), F(1)), 3)
    oracle = TruncatedSeries([F(1), F(1), 0, 0]).inverse()
    assert br.y_series.coeffs == oracle.coeffs


def test_branch_rejects_bad_points():
    f = LaurentPolynomial({(1, 0): 1, (0, 1): 1, (0, 0): -2})
    with pytest.raises(InputError):
        branch_series(f, (F(1), F(2)), 3)
    sing = LaurentPolynomial({(2, 0): 1, (0, 2): -1})  # x^2 - y^2, singular at 0
    with pytest.raises(InputError):
        branch_series(sing, (F(0), F(0)), 3)


def test_branch_annihilates_f():
    rng = random.Random(21)
    for _ in range(10):
        f = LaurentPolynomial(
            {
                (0, 0): F(rng.randint(1, 5)),
                (1, 0): F(rng.randint(1, 5)),
                (0, 1): F(rng.randint(1, 5)),
                (1, 1): F(rng.randint(-5, -1)),
            }
        )
        val = f.evaluate((F(1), F(1)))
        f = f - LaurentPolynomial({(0, 0): val})
        if f.partial("y").evaluate((F(1), F(1))) == 0:
            continue
        br = branch_series(f, (F(1), F(1)), 8)
        assert all(c == 0 for c in br.evaluate_poly(f).coeffs)


# --- osculating matrices --------------------------------------------------------


def test_osculating_simplex_rows():
    f = LaurentPolynomial({(1, 0): 1, (0, 1): 1, (0, 0): -2})
    br = branch_series(f, (F(1), F(1)), 6)
    osc = osculating_matrix(SIMPLEX, br, 1)
    assert osc.columns() == ((0, 0), (0, 1), (1, 0))
    # expansions: 1 -> [1, 0]; y = 1 - t -> [1, -1]; x = 1 + t -> [1, 1]
    assert osc.matrix == [[1, 1, 1], [0, -1, 1]]


def test_osculating_constant_column():
    f = LaurentPolynomial({(1, 0): 1, (0, 1): 1, (0, 0): -2})
    br = branch_series(f, (F(1), F(1)), 4)
    osc = osculating_matrix(SupportSet([(0, 0)]), br, 0)
    assert osc.matrix == [[1]]


def test_osculating_square_row2():
    f = LaurentPolynomial({(1, 0): 1, (0, 1): 1, (0, 0): -2})
    br = branch_series(f, (F(1), F(1)), 6)
    osc = osculating_matrix(SQUARE, br, 2)
    # xy = (1+t)(1-t) = 1 - t^2 contributes the only t^2 term
    assert osc.matrix[2] == [0, 0, 0, -1]


# --- dim V ----------------------------------------------------------------------


def test_dim_v_convex_equality():
    two_simplex = lattice_points(convex_hull(SupportSet([(0, 0), (2, 0), (0, 2)])))
    f = LaurentPolynomial({(0, 0): F(3), (1, 0): F(2), (0, 1): F(-5)})
    assert compute_dim_V(two_simplex, f) == (3, 3)


def test_dim_v_empty_erosion():
    f = LaurentPolynomial({(0, 0): 1, (2, 0): 2, (0, 2): 3})
    assert compute_dim_V(SIMPLEX, f) == (0, 0)


def test_dim_v_nonconvex_bounded():
    rng = random.Random(22)
    for _ in range(20):
        pts = {(rng.randrange(4), rng.randrange(4)) for _ in range(rng.randint(4, 8))}
        A = SupportSet(pts)
        B = SupportSet({(rng.randrange(2), rng.randrange(2)) for _ in range(3)})
        if len(B) < 2:
            continue
        f = LaurentPolynomial({e: F(rng.randint(1, 9)) for e in B})
        dim, bound = compute_dim_V(A, f)
        assert dim <= bound
        if A == lattice_points(convex_hull(A)):
            assert dim == bound


# --- prescribed contact -----------------------------------------------------------


def test_prescribed_square_vs_simplex_m2():
    system = construct_prescribed(SQUARE, SIMPLEX, 2, seed=7)
    assert system.multiplicities == (2,)
    # oracle: substitute the branch of f into g by hand and check a double root;
    # with f = a + bx + cy (a+b+c = 0), y(x) solves linearly, so g restricted to
    # the branch must be c2 (x-1)^2 exactly
    f, g = system.f, system.g
    b = f.coefficient((1, 0))
    c = f.coefficient((0, 1))
    # y = 1 - (b/c)(x - 1) on the curve
    slope = -b / c
    x = UnivariatePolynomial([0, 1], "x")
    ypoly = UnivariatePolynomial([1 - slope, slope], "x")
    acc = UnivariatePolynomial([], "x")
    for (e1, e2), coeff in g.terms.items():
        acc = acc + (x**e1) * (ypoly**e2) * coeff
    assert acc(F(1)) == 0
    assert acc.derivative()(F(1)) == 0
    assert acc.derivative().derivative()(F(1)) != 0


def test_prescribed_m0():
    system = construct_prescribed(SQUARE, SIMPLEX, 0, seed=3)
    assert system.g.evaluate((F(1), F(1))) != 0


def test_prescribed_deep_contact_on_cubic():
    A3 = lattice_points(convex_hull(SupportSet([(0, 0), (3, 0), (0, 3)])))
    system = construct_prescribed(A3, A3, 8, seed=11)
    assert system.multiplicities == (8,)
    fresh = intersection_multiplicity_smooth(system.f, system.g, system.point)
    assert fresh == 8


def test_prescribed_rejects_segments():
    with pytest.raises(HypothesisViolation):
        construct_prescribed(SupportSet([(0, 0), (1, 0)]), SIMPLEX, 1)


def test_prescribed_rejects_sublattice_pairs():
    A = SupportSet([(0, 0), (2, 0), (0, 2)])
    with pytest.raises(HypothesisViolation):
        construct_prescribed(A, A, 1)


def test_prescribed_rejects_oversized_m():
    with pytest.raises(HypothesisViolation):
        construct_prescribed(SQUARE, SIMPLEX, 5, seed=1)


def test_prescribed_deterministic():
    s1 = construct_prescribed(SQUARE, SIMPLEX, 2, seed=42)
    s2 = construct_prescribed(SQUARE, SIMPLEX, 2, seed=42)
    assert s1.f == s2.f and s1.g == s2.g


def test_prescribed_rank_chain():
    # on every successful run the solution-space dimension drops by one per row
    system = construct_prescribed(SQUARE, SIMPLEX, 2, seed=7)
    br = branch_series(system.f, system.point, 2 + len(SQUARE) + 4)
    osc = osculating_matrix(SQUARE, br, 2)
    assert osc.row_ranks == [1, 2, 3]


# --- multipoint -------------------------------------------------------------------


def test_multipoint_single_reduces():
    system = construct_multipoint(SQUARE, SIMPLEX, [2], seed=5)
    assert system.multiplicities[0] >= 2


def test_multipoint_two_points():
    two_simplex = lattice_points(convex_hull(SupportSet([(0, 0), (2, 0), (0, 2)])))
    system = construct_multipoint(two_simplex, SIMPLEX, [1, 1], seed=5)
    assert len(system.points) == 2
    for pt, m in zip(system.points, system.multiplicities):
        assert m >= 1
        assert system.g.evaluate(pt) == 0


def test_multipoint_full_budget():
    two_simplex = lattice_points(convex_hull(SupportSet([(0, 0), (2, 0), (0, 2)])))
    # D = 6 - dim V - 1; against the simplex dim V = |erode| = 3, so D = 2
    system = construct_multipoint(two_simplex, SIMPLEX, [1, 1], seed=9)
    got = [
        intersection_multiplicity_smooth(system.f, system.g, pt)
        for pt in system.points
    ]
    assert all(o >= m for o, m in zip(got, system.multiplicities))


# --- line contact -----------------------------------------------------------------


def test_line_contact_inflection_body_fails_exactly():
    quad = SupportSet([(0, 0), (1, 0), (0, 1), (-1, -1)])
    with pytest.raises(ConstructionFailure) as exc:
        line_contact_construct(quad, 3, seed=3)
    transcript = exc.value.certificate["transcript"]
    assert "rank_minors" in transcript


def test_line_contact_square_fails():
    with pytest.raises(ConstructionFailure):
        line_contact_construct(SQUARE, 3, seed=3)


def test_line_contact_simplex_r2_fails():
    with pytest.raises(ConstructionFailure):
        line_contact_construct(SIMPLEX, 2, seed=3)


def test_line_contact_succeeds_on_two_simplex_points():
    A = lattice_points(convex_hull(SupportSet([(0, 0), (2, 0), (0, 2)])))
    system = line_contact_construct(A, 2, seed=3)
    assert system.multiplicities == (2,)
    got = intersection_multiplicity_smooth(system.g, system.f, system.point)
    assert got == 2


# --- worked families ----------------------------------------------------------------


def test_line_product_systems():
    for (n, k, l), expect in (((3, 2, 0), 6), ((4, 3, 2), 14), ((5, 4, 0), 20)):
        u, v, lines, claimed = build_line_product_system(n, k, l, seed=5)
        assert claimed == expect == n * k + l
        # u really is the product of the lines
        prod = LaurentPolynomial({(0, 0): F(1)})
        for a, b in lines:
            prod = prod * LaurentPolynomial({(1, 0): a, (0, 1): b})
        assert (prod - u).is_zero()
        assert u.support().points <= lattice_points(
            convex_hull(SupportSet([(0, 0), (n, 0), (0, n)]))
        ).points


def test_line_product_validates_parameters():
    with pytest.raises(InputError):
        build_line_product_system(3, 3, 0)  # k must stay below n


def test_gap_family_phi_is_positive_recursion():
    phi = gap_family_phi(7)
    assert phi == [1, 1, 2, 5, 14, 42, 132]
    # oracle: re-run the defining recursion independently
    ref = [1]
    for k in range(2, 8):
        ref.append(sum(ref[i - 1] * ref[k - i - 1] for i in range(1, k)))
    assert phi == ref


def test_gap_family_members_n3():
    A, B = gap_family_supports(3)
    assert len(A) == 5 and len(B) == 4
    for m in (1, 2, 3, 4):
        kind, payload = build_gap_family_member(3, m)
        assert kind == "system"
        assert payload["f_A"].support().points <= A.points
        assert payload["f_B"].support().points <= B.points
        got = intersection_multiplicity_smooth(payload["f_A"], payload["f_B"], payload["point"])
        assert got == m
    kind, payload = build_gap_family_member(3, 6)
    assert kind == "system"
    got = segment_product_multiplicity(payload["f_B"], payload["f_A"], payload["point"])
    assert got == 6


def test_gap_family_obstruction():
    kind, cert = build_gap_family_member(3, 5)
    assert kind == "impossible"
    assert cert.transcript["phi"] == [1, 1, 2, 5]
    assert cert.transcript["all_positive"]
    assert gap_family_achievable_set(3) == [1, 2, 3, 4, 6]


def test_gap_family_larger_n():
    assert gap_family_achievable_set(5) == [1, 2, 3, 4, 5, 6, 8, 10]
    kind, _ = build_gap_family_member(5, 7)
    assert kind == "impossible"
    kind, payload = build_gap_family_member(5, 6)
    assert kind == "system"
    got = intersection_multiplicity_smooth(payload["f_A"], payload["f_B"], payload["point"])
    assert got == 6


def test_gap_family_rejects_bad_parameters():
    with pytest.raises(InputError):
        build_gap_family_member(4, 2)
    with pytest.raises(InputError):
        build_gap_family_member(3, 7)
