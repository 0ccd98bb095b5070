"""JSON encodings for the shared schemas.

Rationals travel as strings "p/q"; supports as {"points": [[x, y], ...]};
Laurent polynomials as {"terms": [{"exp": [e1, e2], "coeff": "p/q"}, ...]}.
Parsers are strict: unknown fields are rejected so malformed requests fail
loudly instead of half-working.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from .algebra import LaurentPolynomial, UnivariatePolynomial, _frac
from .construct import ConstructedSystem
from .errors import InputError
from .lattice import SupportSet, UnimodularAffineMap
from .verify import MultiplicityCertificate


def _check_keys(obj: dict, allowed: set, what: str):
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"unknown fields {sorted(unknown)} in {what}")


def fraction_to_json(x: Fraction) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_json(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InputError(f"rational must be a 'p/q' string, got {s!r}")
    return Fraction(s)


def support_to_json(S: SupportSet) -> dict:
    return {"points": [[x, y] for x, y in S.sorted_points()]}


def support_from_json(obj) -> SupportSet:
    if not isinstance(obj, dict):
        raise InputError("support must be an object with a 'points' field")
    _check_keys(obj, {"points"}, "support")
    pts = obj.get("points")
    if not isinstance(pts, list) or not pts:
        raise InputError("'points' must be a non-empty list of [x, y] pairs")
    return SupportSet((int(p[0]), int(p[1])) for p in pts)


def laurent_to_json(f: LaurentPolynomial) -> dict:
    terms = []
    for e, c in sorted(f.terms.items()):
        if isinstance(c, Fraction):
            terms.append({"exp": [e[0], e[1]], "coeff": fraction_to_json(c)})
        else:
            terms.append({"exp": [e[0], e[1]], "coeff": repr(c)})
    return {"terms": terms}


def laurent_from_json(obj) -> LaurentPolynomial:
    if not isinstance(obj, dict):
        raise InputError("polynomial must be an object with a 'terms' field")
    _check_keys(obj, {"terms"}, "polynomial")
    terms = {}
    for t in obj.get("terms", []):
        _check_keys(t, {"exp", "coeff"}, "polynomial term")
        e = t["exp"]
        terms[(int(e[0]), int(e[1]))] = fraction_from_json(t["coeff"])
    return LaurentPolynomial(terms)


def upoly_to_json(p: UnivariatePolynomial) -> dict:
    return {
        "var": p.var,
        "coeffs": [
            fraction_to_json(c) if isinstance(c, Fraction) else repr(c) for c in p.coeffs
        ],
    }


def point_to_json(p) -> list:
    return [fraction_to_json(p[0]), fraction_to_json(p[1])]


def point_from_json(obj):
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise InputError("point must be a pair")
    return (fraction_from_json(obj[0]), fraction_from_json(obj[1]))


def _value_to_json(v):
    if isinstance(v, Fraction):
        return fraction_to_json(v)
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_value_to_json(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _value_to_json(x) for k, x in v.items()}
    if isinstance(v, SupportSet):
        return support_to_json(v)
    if isinstance(v, LaurentPolynomial):
        return laurent_to_json(v)
    if isinstance(v, UnivariatePolynomial):
        return upoly_to_json(v)
    return repr(v)


def certificate_to_json(cert: MultiplicityCertificate) -> dict:
    return {
        "kind": cert.kind,
        "inputs": _value_to_json(cert.inputs),
        "transcript": _value_to_json(cert.transcript),
    }


def system_to_json(s: ConstructedSystem) -> dict:
    out: Dict[str, object] = {
        "f": laurent_to_json(s.f),
        "g": laurent_to_json(s.g),
        "seed": s.seed,
        "exact": s.exact,
    }
    if len(s.points) == 1:
        out["point"] = point_to_json(s.points[0])
        out["multiplicity"] = s.multiplicities[0]
    else:
        out["points"] = [point_to_json(p) for p in s.points]
        out["multiplicities"] = list(s.multiplicities)
    if s.certificate is not None:
        out["certificate"] = certificate_to_json(s.certificate)
    if s.normalization is not None:
        out["normalization"] = {
            "matrix": [list(s.normalization.matrix[0]), list(s.normalization.matrix[1])],
            "shift": list(s.normalization.shift),
        }
    return out


def system_from_json(obj) -> ConstructedSystem:
    if not isinstance(obj, dict):
        raise InputError("system must be an object")
    _check_keys(
        obj,
        {"f", "g", "point", "multiplicity", "points", "multiplicities", "seed",
         "exact", "certificate", "normalization"},
        "system",
    )
    f = laurent_from_json(obj["f"])
    g = laurent_from_json(obj["g"])
    if "point" in obj:
        points = (point_from_json(obj["point"]),)
        mults = (int(obj["multiplicity"]),)
    else:
        points = tuple(point_from_json(p) for p in obj["points"])
        mults = tuple(int(m) for m in obj["multiplicities"])
    norm = None
    if "normalization" in obj and obj["normalization"] is not None:
        n = obj["normalization"]
        norm = UnimodularAffineMap(
            (tuple(n["matrix"][0]), tuple(n["matrix"][1])), tuple(n["shift"])
        )
    return ConstructedSystem(
        f=f,
        g=g,
        points=points,
        multiplicities=mults,
        seed=int(obj.get("seed", 0)),
        retries_used=0,
        exact=bool(obj.get("exact", True)),
        certificate=None,
        normalization=norm,
    )
