"""Exact commutative algebra: rationals, sparse polynomials, truncated
series, fraction-free linear algebra, and Sylvester resultants.

The ground field is Q (``fractions.Fraction``).  Symbolic parameters, when
needed, are carried by :class:`MPoly`, a sparse multivariate polynomial over
Q; polynomial types accept either scalar as a coefficient, so a resultant
with parameter coefficients comes out as a univariate polynomial whose
coefficients are parameter polynomials.  Everything is immutable after
construction and all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import InputError
from .lattice import SupportSet

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# multivariate polynomials over Q (parameter carriers)


class MPoly:
    """Sparse multivariate polynomial over Q with a fixed variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Tuple[str, ...], terms: Optional[Dict[Tuple[int, ...], Fraction]] = None):
        self.vars = tuple(vars)
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            c = _frac(c)
            if c != 0:
                if len(e) != len(self.vars) or any(k < 0 for k in e):
                    raise InputError(f"bad exponent {e} for vars {self.vars}")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, vars: Tuple[str, ...], c) -> "MPoly":
        c = _frac(c)
        return cls(vars, {tuple([0] * len(vars)): c} if c != 0 else {})

    @classmethod
    def var(cls, vars: Tuple[str, ...], name: str) -> "MPoly":
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise InputError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return isinstance(other, MPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        t: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def degree(self, name: Optional[str] = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def is_const(self) -> bool:
        return all(all(k == 0 for k in e) for e in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_const():
            raise InputError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def coeffs_in(self, name: str) -> List["MPoly"]:
        """Coefficients as polynomials in the remaining variables, ascending in name."""
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        d = self.degree(name)
        out = [MPoly(rest, {}) for _ in range(max(d + 1, 1))]
        for e, c in self.terms.items():
            re = tuple(k for j, k in enumerate(e) if j != i)
            out[e[i]] = out[e[i]] + MPoly(rest, {re: c})
        return out

    def subs(self, values: Dict[str, Fraction]):
        """Substitute rationals for a subset of the variables."""
        remaining = tuple(v for v in self.vars if v not in values)
        out = MPoly(remaining, {})
        for e, c in self.terms.items():
            factor = c
            re = []
            for v, k in zip(self.vars, e):
                if v in values:
                    factor *= _frac(values[v]) ** k
                else:
                    re.append(k)
            out = out + MPoly(remaining, {tuple(re): factor})
        if not remaining:
            return out.const_value()
        return out

    def _lead(self) -> Tuple[Tuple[int, ...], Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact division; raises if the quotient is not polynomial."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return MPoly(self.vars, {})
        q = MPoly(self.vars, {})
        r = self
        de, dc = other._lead()
        while r:
            re, rc = r._lead()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(k < 0 for k in qe):
                raise ArithmeticError("inexact polynomial division")
            term = MPoly(self.vars, {qe: rc / dc})
            q = q + term
            r = r - term * other
        return q

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _lift(value, like):
    """Lift ints/Fractions to the scalar domain of ``like`` (Fraction or MPoly)."""
    if isinstance(like, MPoly) and not isinstance(value, MPoly):
        return MPoly.const(like.vars, value)
    return value


def _is_zero(c) -> bool:
    if isinstance(c, MPoly):
        return not c
    return c == 0


# ---------------------------------------------------------------------------
# univariate polynomials


class UnivariatePolynomial:
    """Dense univariate polynomial; coefficients are Fractions or MPolys."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence = (), var: str = "t"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs if cs and isinstance(cs[0], MPoly) else [_frac(c) if not isinstance(c, MPoly) else c for c in cs])
        self.var = var

    @classmethod
    def zero(cls, var: str = "t") -> "UnivariatePolynomial":
        return cls((), var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self):
        if self.is_zero():
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        return acc

    def _wrap(self, coeffs):
        return UnivariatePolynomial(coeffs, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def _coerce(self, other) -> "UnivariatePolynomial":
        if isinstance(other, UnivariatePolynomial):
            if other.var != self.var:
                raise InputError(f"variable mismatch {self.var!r} vs {other.var!r}")
            return other
        return UnivariatePolynomial([other], self.var)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            return self._wrap([c * other for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return self._wrap(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power")
        out = self._wrap([Fraction(1)])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UnivariatePolynomial([other], self.var)
        return (
            isinstance(other, UnivariatePolynomial)
            and self.var == other.var
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def derivative(self) -> "UnivariatePolynomial":
        return self._wrap([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def divmod_linear(self, root: Fraction) -> Tuple["UnivariatePolynomial", Fraction]:
        """Synthetic division by (var - root); requires Fraction coefficients."""
        root = _frac(root)
        acc = Fraction(0)
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        out.reverse()
        rem = out[0] if out else Fraction(0)
        return self._wrap(out[1:]), rem

    def monic(self) -> "UnivariatePolynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return self._wrap([c / lead for c in self.coeffs])

    def primitive_integer(self) -> "UnivariatePolynomial":
        """Scale to integer coefficients with gcd 1 and positive leading term."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, _frac(c).denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return self._wrap(ints)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*{self.var}")
            else:
                parts.append(f"({c})*{self.var}^{i}")
        return " + ".join(parts)


def poly_gcd(p: UnivariatePolynomial, q: UnivariatePolynomial) -> UnivariatePolynomial:
    """Monic gcd over Q (Euclid)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, _poly_mod(a, b)
    return a.monic() if not a.is_zero() else a


def _poly_mod(a: UnivariatePolynomial, b: UnivariatePolynomial) -> UnivariatePolynomial:
    if b.is_zero():
        raise ZeroDivisionError
    r = a
    while not r.is_zero() and r.degree() >= b.degree():
        shift = r.degree() - b.degree()
        factor = r.leading() / b.leading()
        sub = [Fraction(0)] * shift + [factor * c for c in b.coeffs]
        r = r - UnivariatePolynomial(sub, a.var)
    return r


def squarefree_part(p: UnivariatePolynomial) -> UnivariatePolynomial:
    """p divided by gcd(p, p'), made monic."""
    if p.is_zero():
        raise InputError("zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree() <= 0:
        return p.monic()
    return _poly_exact_div(p, g).monic()


def _poly_exact_div(a: UnivariatePolynomial, b: UnivariatePolynomial) -> UnivariatePolynomial:
    out = []
    r = a
    while not r.is_zero() and r.degree() >= b.degree():
        shift = r.degree() - b.degree()
        factor = r.leading() / b.leading()
        out.append((shift, factor))
        sub = [Fraction(0)] * shift + [factor * c for c in b.coeffs]
        r = r - UnivariatePolynomial(sub, a.var)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    qc = [Fraction(0)] * (a.degree() - b.degree() + 1)
    for shift, factor in out:
        qc[shift] = factor
    return UnivariatePolynomial(qc, a.var)


def factor_out_roots(
    p: UnivariatePolynomial, roots: Sequence[Fraction]
) -> Tuple[UnivariatePolynomial, Tuple[int, ...]]:
    """Divide out each listed rational root to maximal multiplicity."""
    if p.is_zero():
        raise InputError("zero polynomial")
    mults = []
    q = p
    for r in roots:
        r = _frac(r)
        m = 0
        while not q.is_zero():
            cand, rem = q.divmod_linear(r)
            if rem != 0:
                break
            q = cand
            m += 1
        mults.append(m)
    return q, tuple(mults)


class RationalFunction:
    """Quotient of univariate polynomials over Q, reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UnivariatePolynomial, den: Optional[UnivariatePolynomial] = None):
        if den is None:
            den = UnivariatePolynomial([1], num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree() > 0:
            num = _poly_exact_div(num, g)
            den = _poly_exact_div(den, g)
        lead = den.leading()
        num = num * (1 / lead)
        den = den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, var: str = "t"):
        return cls(UnivariatePolynomial((), var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"


def rational_roots(p: UnivariatePolynomial) -> List[Fraction]:
    """All rational roots of a nonzero polynomial over Q, ascending."""
    if p.is_zero():
        raise InputError("zero polynomial")
    q = p.primitive_integer()
    coeffs = list(q.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    roots = set()
    if shift:
        roots.add(Fraction(0))
    if len(coeffs) > 1:
        a0, an = abs(int(coeffs[0])), abs(int(coeffs[-1]))

        def divisors(n):
            out = []
            d = 1
            while d * d <= n:
                if n % d == 0:
                    out.append(d)
                    out.append(n // d)
                d += 1
            return sorted(set(out))

        base = UnivariatePolynomial(coeffs, p.var)
        for num in divisors(a0):
            for den in divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if base(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# truncated power series over Q


class TruncatedSeries:
    """One-variable power series over Q, exact up to a stated order.

    ``coeffs[i]`` is the t^i coefficient; coefficients beyond the truncation
    order are unknown (not zero).  Binary operations truncate to the smaller
    order of the two operands.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        if not coeffs:
            raise InputError("series needs at least the constant coefficient")
        self.coeffs = tuple(_frac(c) for c in coeffs)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "TruncatedSeries":
        return cls([_frac(c)] + [Fraction(0)] * order)

    @classmethod
    def from_coeff_map(cls, pairs: Dict[int, Fraction], order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * (order + 1)
        for i, c in pairs.items():
            if 0 <= i <= order:
                cs[i] = _frac(c)
        return cls(cs)

    def coefficient(self, i: int) -> Fraction:
        if i > self.truncation_order:
            raise InputError(f"coefficient {i} beyond truncation {self.truncation_order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.truncation_order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def order(self) -> Optional[int]:
        """Index of the first non-zero coefficient, or None if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.truncation_order)
        n = min(self.truncation_order, other.truncation_order)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.truncation_order)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * _frac(other) for c in self.coeffs])
        n = min(self.truncation_order, other.truncation_order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise InputError("series inverse requires a unit (non-zero constant term)")
        n = self.truncation_order
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / self.coeffs[0]
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, k + 1):
                s += self.coeffs[j] * inv[k - j]
            inv[k] = -s / self.coeffs[0]
        return TruncatedSeries(inv)

    def int_pow(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = TruncatedSeries.constant(1, self.truncation_order)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    return s.inverse()


def series_int_pow(s: TruncatedSeries, e: int) -> TruncatedSeries:
    return s.int_pow(e)


# ---------------------------------------------------------------------------
# Laurent polynomials in two variables


class LaurentPolynomial:
    """Map from integer exponent pairs to non-zero coefficients.

    Coefficients are Fractions, or MPolys when symbolic parameters are in
    play; negative exponents are allowed (evaluation then requires non-zero
    coordinates).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], object]] = None):
        clean: Dict[Tuple[int, int], object] = {}
        for e, c in (terms or {}).items():
            e = (int(e[0]), int(e[1]))
            if not isinstance(c, MPoly):
                c = _frac(c)
            if not _is_zero(c):
                clean[e] = c
        self.terms = clean

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Tuple[int, int], object]]) -> "LaurentPolynomial":
        t: Dict[Tuple[int, int], object] = {}
        for e, c in pairs:
            e = (int(e[0]), int(e[1]))
            t[e] = t.get(e, 0) + c
        return cls(t)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> SupportSet:
        if not self.terms:
            raise InputError("zero polynomial has empty support")
        return SupportSet(self.terms.keys())

    def coefficient(self, e: Tuple[int, int]):
        return self.terms.get((int(e[0]), int(e[1])), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial({(0, 0): other})
        t = dict(self.terms)
        for e, c in other.terms.items():
            cur = t.get(e)
            t[e] = c if cur is None else cur + c
        return LaurentPolynomial(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial({(0, 0): other})
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial({e: c * other for e, c in self.terms.items()})
        t: Dict[Tuple[int, int], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1])
                cur = t.get(e)
                prod = c1 * c2
                t[e] = prod if cur is None else cur + prod
        return LaurentPolynomial(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a polynomial")
        out = LaurentPolynomial({(0, 0): 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def partial(self, var: str) -> "LaurentPolynomial":
        i = {"x": 0, "y": 1}[var]
        t = {}
        for e, c in self.terms.items():
            if e[i] != 0:
                ne = (e[0] - 1, e[1]) if i == 0 else (e[0], e[1] - 1)
                t[ne] = t.get(ne, 0) + c * e[i]
        return LaurentPolynomial(t)

    def evaluate(self, point: Tuple[Fraction, Fraction]):
        px, py = _frac(point[0]), _frac(point[1])
        acc = None
        for (e1, e2), c in self.terms.items():
            if (e1 < 0 and px == 0) or (e2 < 0 and py == 0):
                raise InputError("negative exponent at a zero coordinate")
            val = c * px**e1 * py**e2
            acc = val if acc is None else acc + val
        return Fraction(0) if acc is None else acc

    def shift_exponents(self, v: Tuple[int, int]) -> "LaurentPolynomial":
        return LaurentPolynomial({(e[0] + v[0], e[1] + v[1]): c for e, c in self.terms.items()})

    def __repr__(self):
        parts = []
        for e, c in sorted(self.terms.items()):
            parts.append(f"({c})*x^{e[0]}*y^{e[1]}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# fraction-free linear algebra over Q


def _integerize_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    from math import lcm

    out = []
    for row in rows:
        den = 1
        fr = [_frac(c) for c in row]
        for c in fr:
            den = lcm(den, c.denominator)
        out.append([int(c * den) for c in fr])
    return out


def _bareiss_echelon(m: List[List[int]]) -> Tuple[List[List[int]], List[int], int]:
    """Fraction-free row echelon; returns (matrix, pivot columns, sign)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    piv_cols: List[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
            sign = -sign
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    return m, piv_cols, sign


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    m = _integerize_rows(rows)
    _, piv, _ = _bareiss_echelon(m)
    return len(piv)


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Exact basis of the right kernel.

    Deterministic: pivot columns ascend, and each basis vector sets one free
    variable to 1 (free columns in ascending order) and the rest to 0.
    """
    if not rows:
        if ncols is None:
            raise InputError("need ncols for an empty row set")
        return [[Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    m = _integerize_rows(rows)
    ech, piv, _ = _bareiss_echelon(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r in range(len(piv) - 1, -1, -1):
            pc = piv[r]
            s = Fraction(0)
            for j in range(pc + 1, ncols):
                if v[j] != 0:
                    s += Fraction(ech[r][j]) * v[j]
            v[pc] = -s / ech[r][pc]
        basis.append(v)
    return basis


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """One exact solution of rows * x = rhs, or None if inconsistent."""
    if not rows:
        return None
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m = _integerize_rows(aug)
    ech, piv, _ = _bareiss_echelon(m)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r in range(len(piv) - 1, -1, -1):
        pc = piv[r]
        s = Fraction(ech[r][n])
        for j in range(pc + 1, n):
            s -= Fraction(ech[r][j]) * x[j]
        x[pc] = s / Fraction(ech[r][pc])
    return x


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square Fraction matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    from math import lcm

    scale = Fraction(1)
    m = []
    for row in rows:
        den = 1
        fr = [_frac(c) for c in row]
        for c in fr:
            den = lcm(den, c.denominator)
        scale *= den
        m.append([int(c * den) for c in fr])
    ech, piv, sign = _bareiss_echelon(m)
    if len(piv) < n:
        return Fraction(0)
    return Fraction(sign * ech[n - 1][n - 1]) / scale


def det_ring(rows: List[List[MPoly]]) -> MPoly:
    """Bareiss determinant over a polynomial ring (exact division)."""
    n = len(rows)
    if n == 0:
        raise InputError("empty matrix")
    vars = rows[0][0].vars
    m = [[c for c in row] for row in rows]
    sign = 1
    prev = MPoly.const(vars, 1)
    for k in range(n - 1):
        pr = next((i for i in range(k, n) if m[i][k]), None)
        if pr is None:
            return MPoly(vars, {})
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = MPoly(vars, {})
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


# ---------------------------------------------------------------------------
# Sylvester resultants


def _collect_param_vars(*polys: LaurentPolynomial) -> Tuple[str, ...]:
    names: List[str] = []
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, MPoly):
                for v in c.vars:
                    if v not in names:
                        names.append(v)
    return tuple(sorted(names))


def sylvester_resultant(
    f: LaurentPolynomial, g: LaurentPolynomial, var: str
) -> UnivariatePolynomial:
    """Resultant eliminating ``var`` ('x' or 'y'), exact.

    Laurent terms are cleared by a monomial shift first; monomials are units
    on the torus, so this changes the resultant only by a monomial factor in
    the surviving variable.  The result is a univariate polynomial in the
    other variable whose coefficients are rationals, or parameter
    polynomials when the inputs carry parameters.  It vanishes identically
    iff the (cleared) inputs share a factor involving ``var``.
    """
    if f.is_zero() or g.is_zero():
        raise InputError("resultant of a zero polynomial")
    vi = {"x": 0, "y": 1}[var]
    other = "y" if var == "x" else "x"

    def cleared(p: LaurentPolynomial) -> LaurentPolynomial:
        m0 = min(e[0] for e in p.terms)
        m1 = min(e[1] for e in p.terms)
        return p.shift_exponents((-min(m0, 0), -min(m1, 0)))

    f, g = cleared(f), cleared(g)
    params = _collect_param_vars(f, g)
    ring_vars = (other,) + params

    def coeff_list(p: LaurentPolynomial) -> List[MPoly]:
        d = max(e[vi] for e in p.terms)
        out = [MPoly(ring_vars, {}) for _ in range(d + 1)]
        for e, c in p.terms.items():
            lifted: MPoly
            if isinstance(c, MPoly):
                lifted = MPoly(ring_vars, {})
                for ee, cc in c.terms.items():
                    full = [0] * len(ring_vars)
                    full[0] = e[1 - vi]
                    for name, k in zip(c.vars, ee):
                        full[ring_vars.index(name)] = k
                    lifted = lifted + MPoly(ring_vars, {tuple(full): cc})
            else:
                full = [0] * len(ring_vars)
                full[0] = e[1 - vi]
                lifted = MPoly(ring_vars, {tuple(full): c})
            out[e[vi]] = out[e[vi]] + lifted
        return out

    fc, gc = coeff_list(f), coeff_list(g)
    n, m = len(fc) - 1, len(gc) - 1
    if n == 0 and m == 0:
        raise InputError(f"both inputs independent of {var}")
    if n == 0:
        res = fc[0] ** m
    elif m == 0:
        res = gc[0] ** n
    else:
        size = n + m
        rows = []
        for j in range(m):
            row = [MPoly(ring_vars, {}) for _ in range(size)]
            for i, c in enumerate(reversed(fc)):
                row[j + i] = c
            rows.append(row)
        for j in range(n):
            row = [MPoly(ring_vars, {}) for _ in range(size)]
            for i, c in enumerate(reversed(gc)):
                row[j + i] = c
            rows.append(row)
        res = det_ring(rows)

    deg = res.degree(other) if res else -1
    coeffs: List[object] = []
    rest = tuple(v for v in ring_vars if v != other)
    for part in res.coeffs_in(other) if res else []:
        coeffs.append(part.const_value() if not rest else part)
    return UnivariatePolynomial(coeffs, other)


def mpoly_resultant(f: MPoly, g: MPoly, name: str) -> MPoly:
    """Resultant of two parameter polynomials, eliminating ``name``."""
    if not f or not g:
        raise InputError("resultant of a zero polynomial")
    fc = f.coeffs_in(name)
    gc = g.coeffs_in(name)
    while len(fc) > 1 and not fc[-1]:
        fc.pop()
    while len(gc) > 1 and not gc[-1]:
        gc.pop()
    n, m = len(fc) - 1, len(gc) - 1
    if n == 0 and m == 0:
        raise InputError(f"both inputs independent of {name}")
    if n == 0:
        return fc[0] ** m
    if m == 0:
        return gc[0] ** n
    size = n + m
    vars = fc[0].vars
    zero = MPoly(vars, {})
    rows = []
    for j in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(fc)):
            row[j + i] = c
        rows.append(row)
    for j in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(gc)):
            row[j + i] = c
        rows.append(row)
    return det_ring(rows)
