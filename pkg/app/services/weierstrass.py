"""
Weierstrass models for curves with a rational point of order N.

The integral models are the cleared forms of the Tate normal form
y^2 + (1-c)xy - by = x^3 - bx^2 with the torsion point at (0,0). Each N
also carries its discriminant as a product of small polynomial factors in
(s, t); the enumeration factors those pieces instead of the expanded value.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import gmpy2

from ..errors import DegenerateParameter, PointNotOnCurve, SingularCurve
from ..models import INFINITY, Invariants, Point, Rational, TateParameter, WeierstrassModel

logger = logging.getLogger(__name__)

Poly = Callable[[int, int], int]

# N -> [(label, factor(s, t), exponent)]; the product is the discriminant
DISC_FACTORS: Dict[int, List[Tuple[str, Poly, int]]] = {
    4: [
        ("s", lambda s, t: s, 4),
        ("t", lambda s, t: t, 7),
        ("16s+t", lambda s, t: 16 * s + t, 1),
    ],
    5: [
        ("s", lambda s, t: s, 5),
        ("t", lambda s, t: t, 5),
        ("s^2-11st-t^2", lambda s, t: s * s - 11 * s * t - t * t, 1),
    ],
    6: [
        ("s", lambda s, t: s, 6),
        ("t", lambda s, t: t, 2),
        ("s+t", lambda s, t: s + t, 3),
        ("9s+t", lambda s, t: 9 * s + t, 1),
    ],
    7: [
        ("s", lambda s, t: s, 7),
        ("t", lambda s, t: t, 7),
        ("s-t", lambda s, t: s - t, 7),
        ("s^3-8s^2t+5st^2+t^3", lambda s, t: s ** 3 - 8 * s * s * t + 5 * s * t * t + t ** 3, 1),
    ],
    8: [
        ("s", lambda s, t: s, 8),
        ("t", lambda s, t: t, 2),
        ("s-t", lambda s, t: s - t, 8),
        ("2s-t", lambda s, t: 2 * s - t, 4),
        ("8s^2-8st+t^2", lambda s, t: 8 * s * s - 8 * s * t + t * t, 1),
    ],
    9: [
        ("s", lambda s, t: s, 9),
        ("t", lambda s, t: t, 9),
        ("s-t", lambda s, t: s - t, 9),
        ("s^2-st+t^2", lambda s, t: s * s - s * t + t * t, 3),
        ("s^3-6s^2t+3st^2+t^3", lambda s, t: s ** 3 - 6 * s * s * t + 3 * s * t * t + t ** 3, 1),
    ],
    10: [
        ("s", lambda s, t: s, 10),
        ("t", lambda s, t: t, 5),
        ("s-t", lambda s, t: s - t, 10),
        ("2s-t", lambda s, t: 2 * s - t, 5),
        ("4s^2-2st-t^2", lambda s, t: 4 * s * s - 2 * s * t - t * t, 1),
        ("s^2-3st+t^2", lambda s, t: s * s - 3 * s * t + t * t, 2),
    ],
    12: [
        ("s", lambda s, t: s, 12),
        ("t", lambda s, t: t, 2),
        ("s-t", lambda s, t: s - t, 12),
        ("2s-t", lambda s, t: 2 * s - t, 6),
        ("3s^2-3st+t^2", lambda s, t: 3 * s * s - 3 * s * t + t * t, 4),
        ("2s^2-2st+t^2", lambda s, t: 2 * s * s - 2 * s * t + t * t, 3),
        ("6s^2-6st+t^2", lambda s, t: 6 * s * s - 6 * s * t + t * t, 1),
    ],
}


def check_parameter(N: int, s: int, t: int):
    """Raise if (N, s, t) gives no elliptic curve."""
    if N == 10 and s * s - 3 * s * t + t * t == 0:
        raise DegenerateParameter("clearing denominator s^2-3st+t^2 vanishes")
    if N == 12 and s == t:
        raise DegenerateParameter("clearing denominator s-t vanishes")
    for label, poly, _ in DISC_FACTORS[N]:
        if poly(s, t) == 0:
            raise SingularCurve(f"singular: {label}=0")


def disc_factors(param: TateParameter) -> List[Tuple[int, int]]:
    return [(poly(param.s, param.t), e) for _, poly, e in DISC_FACTORS[param.N]]


def closed_form_disc(param: TateParameter) -> int:
    disc = 1
    for value, e in disc_factors(param):
        disc *= value ** e
    return disc


def integral_model(param: TateParameter) -> WeierstrassModel:
    N, s, t = param.N, param.s, param.t
    if N == 4:
        a1, a2, a3 = t, -s * t, -s * t * t
    elif N == 5:
        a1, a2, a3 = t - s, -s * t, -s * t * t
    elif N == 6:
        a1, a2, a3 = t - s, -(s * t + s * s), -(t * t * s + t * s * s)
    elif N == 7:
        a1 = t * t - s * s + s * t
        a2 = -(s ** 3 * t - s * s * t * t)
        a3 = -s * s * (s * t ** 3 - t ** 4)
    elif N == 8:
        w = s * s * (s - t) * (2 * s - t)
        a1, a2, a3 = -(t * t - 4 * s * t + 2 * s * s), -w, -t * s * w
    elif N == 9:
        w = s * s * (s - t) * (s * s - s * t + t * t)
        a1, a2, a3 = t ** 3 - s * s * (s - t), -t * w, -t ** 4 * w
    elif N == 10:
        d = s * s - 3 * s * t + t * t
        w = s ** 3 * (s - t) * (2 * s - t)
        a1, a2, a3 = t * d + s * (s - t) * (2 * s - t), -t * w, -t * t * w * d
    else:
        q = (2 * s - t) * (3 * s * s - 3 * s * t + t * t)
        w = s * (s - t) ** 2 * q * (2 * s * s - 2 * s * t + t * t)
        a1 = t * (s - t) ** 3 + s * q
        a2, a3 = -w, -t * (s - t) ** 3 * w
    return WeierstrassModel(a1, a2, a3, 0, 0)


def invariants(model: WeierstrassModel) -> Invariants:
    a1, a2, a3, a4, a6 = model.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = Fraction(c4 ** 3) / disc if disc != 0 else None
    return Invariants(b2, b4, b6, b8, c4, c6, disc, j)


def universal_model(b: Rational, c: Rational) -> Tuple[WeierstrassModel, Invariants]:
    b, c = Fraction(b), Fraction(c)
    disc = b ** 3 * (16 * b * b - b * (8 * c * c + 20 * c - 1) - c * (1 - c) ** 3)
    if disc == 0:
        raise SingularCurve(f"singular: disc(b={b}, c={c}) = 0")
    model = WeierstrassModel(*(_demote(a) for a in (1 - c, -b, -b, 0, 0)))
    return model, invariants(model)


def transform(model: WeierstrassModel, u: Rational, r: Rational, s: Rational, t: Rational) -> WeierstrassModel:
    """Apply x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    a1, a2, a3, a4, a6 = (Fraction(a) for a in model.coefficients)
    u, r, s, t = Fraction(u), Fraction(r), Fraction(s), Fraction(t)
    n1 = (a1 + 2 * s) / u
    n2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    n3 = (a3 + r * a1 + 2 * t) / u ** 3
    n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    n6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    return WeierstrassModel(*(_demote(a) for a in (n1, n2, n3, n4, n6)))


def _demote(value: Fraction) -> Rational:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def on_curve(model: WeierstrassModel, P: Point) -> bool:
    if P.is_infinity:
        return True
    a1, a2, a3, a4, a6 = model.coefficients
    x, y = P.x, P.y
    return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6


def point(model: WeierstrassModel, x: Rational, y: Rational) -> Point:
    P = Point(Fraction(x), Fraction(y))
    if not on_curve(model, P):
        raise PointNotOnCurve(f"{P} is not on {model}")
    return P


def negate(model: WeierstrassModel, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, -P.y - model.a1 * P.x - model.a3)


def add_points(model: WeierstrassModel, P: Point, Q: Point) -> Point:
    for R in (P, Q):
        if not on_curve(model, R):
            raise PointNotOnCurve(f"{R} is not on {model}")
    return _add(model, P, Q)


def _add(model: WeierstrassModel, P: Point, Q: Point) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = model.coefficients
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        denom = 2 * y1 + a1 * x1 + a3
        slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom
        nu = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / denom
    else:
        slope = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = slope * slope + a1 * slope - a2 - x1 - x2
    y3 = -(slope + a1) * x3 - nu - a3
    return Point(Fraction(x3), Fraction(y3))


def multiply(model: WeierstrassModel, P: Point, n: int) -> Point:
    if n < 0:
        return multiply(model, negate(model, P), -n)
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = _add(model, result, addend)
        addend = _add(model, addend, addend)
        n >>= 1
    return result


def order_of_point(model: WeierstrassModel, P: Point, cap: int) -> Optional[int]:
    if not on_curve(model, P):
        raise PointNotOnCurve(f"{P} is not on {model}")
    Q = P
    for n in range(1, cap + 1):
        if Q.is_infinity:
            return n
        Q = _add(model, Q, P)
    return None


def torsion_order(param: TateParameter) -> Optional[int]:
    """Order of (0,0) on the integral model, searched up to 2N."""
    model = integral_model(param)
    return order_of_point(model, Point(Fraction(0), Fraction(0)), 2 * param.N)


def coprimality_conditions(param: TateParameter) -> Dict[str, bool]:
    """gcd facts about the discriminant factors used in the classification."""
    s, t = param.s, param.t
    g = lambda a, b: int(gmpy2.gcd(a, b))
    if param.N == 4:
        return {
            "gcd(s,16s+t)=1": g(s, 16 * s + t) == 1,
            "gcd(t,16s+t)|16": 16 % g(t, 16 * s + t) == 0,
        }
    if param.N == 5:
        q = s * s - 11 * s * t - t * t
        return {"gcd(s,s^2-11st-t^2)=1": g(s, q) == 1, "gcd(t,s^2-11st-t^2)=1": g(t, q) == 1}
    if param.N == 6:
        return {
            "gcd(s,s+t)=1": g(s, s + t) == 1,
            "gcd(t,s+t)=1": g(t, s + t) == 1,
            "gcd(s,9s+t)=1": g(s, 9 * s + t) == 1,
        }
    return {}
