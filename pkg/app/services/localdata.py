"""
Local and global reduction data: Tate's algorithm at a prime, global
minimal models and the conductor.

Tate's algorithm follows the usual case split (I_n, II, III, IV, I0*, I_n*,
IV*, III*, II*) and is valid at every prime including 2 and 3. When the
model turns out not to be minimal at p it is scaled by u = p and the
algorithm restarts, so tate_local also works on non-minimal input.
"""
import logging
from typing import List, Optional, Tuple

from ..errors import DomainError, SingularCurve
from ..models import Factorization, GlobalData, LocalData, Reduction, WeierstrassModel
from .arith import factor, from_exponents, is_prime, legendre_symbol, padic_valuation
from .weierstrass import invariants, transform

logger = logging.getLogger(__name__)

_INFINITE = 10 ** 9


def _ord(n: int, p: int) -> int:
    return _INFINITE if n == 0 else padic_valuation(n, p)


def _inv(a: int, p: int) -> int:
    return pow(a % p, -1, p)


def _split_mult(model: WeierstrassModel, p: int) -> bool:
    """Whether the tangents y^2 + a1xy - a2x^2 at the node are rational."""
    a1, a2 = model.a1, model.a2
    if p == 2:
        return any((T * T + a1 * T - a2) % 2 == 0 for T in (0, 1))
    return legendre_symbol(a1 * a1 + 4 * a2, p) == 1


def components(kodaira: str) -> int:
    """Number of components of the special fibre for a Kodaira symbol."""
    fixed = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}
    if kodaira in fixed:
        return fixed[kodaira]
    if kodaira.endswith("*"):
        return int(kodaira[1:-1]) + 5
    return int(kodaira[1:])


def _tate(model: WeierstrassModel, p: int) -> Tuple[LocalData, WeierstrassModel, int]:
    """Run Tate's algorithm; returns (local data, model minimal at p, u)."""
    if not model.is_integral:
        raise DomainError(f"Tate's algorithm needs an integral model, got {model}")
    u = 1
    while True:
        inv = invariants(model)
        if inv.disc == 0:
            raise SingularCurve(f"singular: disc of {model} is 0")
        n = _ord(inv.disc, p)
        if n == 0:
            return LocalData(p, 0, "I0", 0, 1, Reduction.GOOD), model, u

        a1, a2, a3, a4, a6 = model.coefficients
        b2, b4, b6, c4, c6 = inv.b2, inv.b4, inv.b6, inv.c4, inv.c6
        # move the singular point of the reduction to (0,0)
        if p == 2:
            if b2 % 2 == 0:
                r = a4 % 2
                t = (r * (1 + a2 + a4) + a6) % 2
            else:
                r = a3 % 2
                t = (r + a4) % 2
        elif p == 3:
            r = -b6 % 3 if b2 % 3 == 0 else -b2 * b4 % 3
            t = (a1 * r + a3) % 3
        else:
            if c4 % p == 0:
                r = -b2 * _inv(12, p) % p
            else:
                r = -(c6 + b2 * c4) * _inv(12 * c4, p) % p
            t = -(a1 * r + a3) * _inv(2, p) % p
        model = transform(model, 1, r, 0, t)
        a1, a2, a3, a4, a6 = model.coefficients

        if c4 % p != 0:
            reduction = Reduction.SPLIT if _split_mult(model, p) else Reduction.NONSPLIT
            return LocalData(p, n, f"I{n}", 1, n, reduction), model, u

        b6 = a3 * a3 + 4 * a6
        b8 = invariants(model).b8
        if _ord(a6, p) < 2:
            return _additive(p, n, "II", n), model, u
        if _ord(b8, p) < 3:
            return _additive(p, n, "III", n - 1), model, u
        if _ord(b6, p) < 3:
            return _additive(p, n, "IV", n - 2), model, u

        # now p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t = 2 * ((a6 // 4) % 2)
        else:
            s = -a1 * _inv(2, p) % p
            t = -a3 * _inv(2, p) % p
        model = transform(model, 1, 0, s, t)
        a1, a2, a3, a4, a6 = model.coefficients

        # roots of T^3 + bT^2 + cT + d modulo p
        b, c, d = a2 // p, a4 // p ** 2, a6 // p ** 3
        w = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
        x = 3 * c - b * b
        if w % p != 0:
            return _additive(p, n, "I0*", n - 4), model, u

        if x % p != 0:
            # double root: translate it to 0, then peel off powers of p
            if p == 2:
                root = c
            elif p == 3:
                root = b * c
            else:
                root = (b * c - 9 * d) * _inv(2 * x, p)
            model = transform(model, 1, p * (root % p), 0, 0)
            ix = iy = 3
            mx = my = p * p
            while True:
                a1, a2, a3, a4, a6 = model.coefficients
                xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if (xa3 * xa3 + 4 * xa6) % p != 0:
                    break
                beta = xa6 % 2 if p == 2 else -xa3 * _inv(2, p) % p
                model = transform(model, 1, 0, 0, my * beta)
                my *= p
                iy += 1
                a1, a2, a3, a4, a6 = model.coefficients
                xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if (xa4 * xa4 - 4 * xa2 * xa6) % p != 0:
                    break
                root = (xa6 * xa2) % 2 if p == 2 else -xa4 * _inv(2 * xa2, p) % p
                model = transform(model, 1, mx * root, 0, 0)
                mx *= p
                ix += 1
            nu = ix + iy - 5
            return _additive(p, n, f"I{nu}*", n - ix - iy + 1), model, u

        # triple root
        if p == 2:
            root = b
        elif p == 3:
            root = -d
        else:
            root = -b * _inv(3, p)
        model = transform(model, 1, p * (root % p), 0, 0)
        a1, a2, a3, a4, a6 = model.coefficients
        x3, x6 = a3 // p ** 2, a6 // p ** 4
        if (x3 * x3 + 4 * x6) % p != 0:
            return _additive(p, n, "IV*", n - 6), model, u
        beta = x6 % 2 if p == 2 else -x3 * _inv(2, p) % p
        model = transform(model, 1, 0, 0, p * p * beta)
        a1, a2, a3, a4, a6 = model.coefficients
        if _ord(a4, p) < 4:
            return _additive(p, n, "III*", n - 7), model, u
        if _ord(a6, p) < 6:
            return _additive(p, n, "II*", n - 8), model, u

        logger.debug("model not minimal at %d, scaling by u=%d", p, p)
        model = transform(model, p, 0, 0, 0)
        u *= p


def _additive(p: int, n: int, kodaira: str, f_p: int) -> LocalData:
    return LocalData(p, n, kodaira, f_p, components(kodaira), Reduction.ADDITIVE)


# ord_p(disc_min) for each additive Kodaira type when p >= 5
_TAME_ORD_DISC = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
# largest conductor exponent at the wild primes
_WILD_MAX_EXPONENT = {2: 8, 3: 5}


def check_local_data(local: LocalData):
    """Check local data on a minimal model against the tabulated constraints."""
    p, n, kodaira, f = local.p, local.ord_disc, local.kodaira, local.f_p
    if local.reduction == Reduction.GOOD:
        ok = n == 0 and f == 0
    elif local.reduction.is_multiplicative:
        ok = f == 1 and kodaira == f"I{n}" and local.m_p == n
    elif p in _WILD_MAX_EXPONENT:
        ok = 2 <= f <= _WILD_MAX_EXPONENT[p]
    else:
        if kodaira.startswith("I") and kodaira.endswith("*"):
            tame = 6 + int(kodaira[1:-1])
        else:
            tame = _TAME_ORD_DISC.get(kodaira)
        ok = f == 2 and n == tame
    if not ok:
        raise ArithmeticError(f"inconsistent local data at {p}: {kodaira}, ord(disc)={n}, f={f}, m={local.m_p}")


def tate_local(model: WeierstrassModel, p: int) -> LocalData:
    if not is_prime(p) or p < 2:
        raise DomainError(f"{p} is not a prime")
    local, _, _ = _tate(model, p)
    return local


def canonical_model(model: WeierstrassModel) -> WeierstrassModel:
    """Reduce to a1 in {0,1}, a2 in {-1,0,1}, a3 in {0,1} by an integral change of coordinates."""
    a1, a2, a3 = model.a1, model.a2, model.a3
    s = -(a1 // 2)
    A = a2 - s * a1 - s * s
    r = -((A + 1) // 3)
    B = a3 + r * a1
    t = -(B // 2)
    return transform(model, 1, r, s, t)


def minimalize(model: WeierstrassModel, disc: Optional[Factorization] = None) -> Tuple[WeierstrassModel, int]:
    """Global minimal model (canonically reduced) and u with disc = u^12 disc_min.

    ``disc`` may carry an already known factorization of the model's
    discriminant so that large values are never factored from scratch.
    """
    value = invariants(model).disc
    if value == 0:
        raise SingularCurve(f"singular: disc of {model} is 0")
    if disc is None:
        disc = factor(value)
    elif disc.value != value:
        raise DomainError(f"factorization {disc} does not match disc {value}")
    u = 1
    for p, e in disc.factors:
        if e < 12:
            continue
        _, model, u_p = _tate(model, p)
        u *= u_p
    return canonical_model(model), u


def conductor(model: WeierstrassModel, disc: Optional[Factorization] = None) -> GlobalData:
    if disc is None:
        disc = factor(invariants(model).disc)
    minimal, u = minimalize(model, disc)
    disc_min = from_exponents(disc.sign, {p: e - 12 * _ord(u, p) for p, e in disc.factors})
    locals_: List[LocalData] = []
    exponents = {}
    for p, e in disc_min.factors:
        local = tate_local(minimal, p)
        if local.ord_disc != e:
            raise ArithmeticError(f"model {minimal} is not minimal at {p}")
        check_local_data(local)
        locals_.append(local)
        exponents[p] = local.f_p
    return GlobalData(minimal, u, disc_min, from_exponents(1, exponents), tuple(locals_))


def conductor_of(model: WeierstrassModel) -> Factorization:
    return conductor(model).conductor
