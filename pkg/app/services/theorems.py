"""
Expected minimal discriminants for each torsion order, as shapes and as
explicit values, together with the Szpiro exponents they satisfy.
"""
from typing import Dict, Iterator, Optional, Tuple

from ..errors import DomainError
from ..models import DiscFamily, Factorization, TheoremTable, UnlistedCurve
from .arith import from_exponents

SQUAREFREE = "squarefree"
PRIME_POWER = "prime-power"
PRIME = "prime"
MODES = (SQUAREFREE, PRIME_POWER, PRIME)


def disc(sign: int, exponents: Dict[int, int]) -> Factorization:
    return from_exponents(sign, exponents)


def _pairs(f: Factorization) -> Iterator[Tuple[int, int, int, int]]:
    """Both orderings (p, a, q, b) of a two-prime factorization."""
    if len(f.factors) != 2:
        return
    (p, a), (q, b) = f.factors
    yield p, a, q, b
    yield q, b, p, a


def _shifted_power_of_two_family(p_exp: int):
    """2^e p^p_exp with p = 2^(k-4) +- 1, k >= 4.

    The listed exponent is e = 2k+4. The curves behind this column come from
    t = 2^k, where s^4 t^7 (16s+t) carries 2^(7k+4) before minimalization, so
    any e congruent to 7k+4 mod 12 is accepted as well.
    """

    def matches(f: Factorization) -> bool:
        for two, e, p, a in _pairs(f):
            if two != 2 or a != p_exp:
                continue
            for m in (p - 1, p + 1):
                if m & (m - 1):
                    continue
                k = m.bit_length() + 3
                if e == 2 * k + 4 or (e - 7 * k - 4) % 12 == 0:
                    return True
        return False

    return matches


def _power_of_two_family(p_exp: int):
    """2^(4k) p^p_exp with p = 2^(k+4) +- 1."""

    def matches(f: Factorization) -> bool:
        for two, e, p, a in _pairs(f):
            if two != 2 or a != p_exp or e % 4:
                continue
            k = e // 4
            if p in (2 ** (k + 4) + 1, 2 ** (k + 4) - 1):
                return True
        return False

    return matches


def _sixteen_p_family(q_scale: int):
    """p^4 q^(q_scale*b) with 16p +- 1 = q^b."""

    def matches(f: Factorization) -> bool:
        for p, a, q, b in _pairs(f):
            if a != 4 or b % q_scale:
                continue
            if q ** (b // q_scale) in (16 * p + 1, 16 * p - 1):
                return True
        return False

    return matches


def _sixteen_pk_family(q_exp: int):
    """p^(4k) q^q_exp with q = 16 p^k +- 1."""

    def matches(f: Factorization) -> bool:
        for p, a, q, b in _pairs(f):
            if b != q_exp or a % 4:
                continue
            k = a // 4
            if q in (16 * p ** k + 1, 16 * p ** k - 1):
                return True
        return False

    return matches


def _square_plus_sixteen(f: Factorization) -> bool:
    for p, a, q, b in _pairs(f):
        if b == 1 and a % 2 == 0 and q == p ** a + 16:
            return True
    return False


def _fifth_power_open(f: Factorization) -> bool:
    for p, a, q, b in _pairs(f):
        if a % 5 == 0 and b % 2 == 1:
            return True
    return False


N4_FAMILIES: Tuple[DiscFamily, ...] = (
    DiscFamily("2^(2k+4)p", "p = 2^(k-4) +- 1, k >= 4", _shifted_power_of_two_family(1), szpiro=10),
    DiscFamily("2^(2k+4)p^4", "p = 2^(k-4) +- 1, k >= 4", _shifted_power_of_two_family(4), szpiro=10),
    DiscFamily("2^(4k)p", "p = 2^(k+4) +- 1, k > 0", _power_of_two_family(1), szpiro=11),
    DiscFamily("2^(4k)p^7", "p = 2^(k+4) +- 1, k > 0", _power_of_two_family(7), szpiro=11),
    DiscFamily("p^4q^b", "16p +- 1 = q^b", _sixteen_p_family(1), szpiro=8),
    DiscFamily("p^4q^(7b)", "16p +- 1 = q^b", _sixteen_p_family(7), szpiro=32),
    DiscFamily("p^(4k)q", "q = 16p^k +- 1", _sixteen_pk_family(1), szpiro=5),
    DiscFamily("p^(4k)q^7", "q = 16p^k +- 1", _sixteen_pk_family(7), szpiro=11),
    DiscFamily("p^(2k)q", "q = p^(2k) + 16, k > 0", _square_plus_sixteen, szpiro=2),
)

N5_OPEN_FAMILY = DiscFamily(
    "p^(5k)q^(2l+1)",
    "|s| = p^k with s^2 -+ 11s - 1 = +-q^(2l+1); completeness not established",
    _fifth_power_open,
    is_open=True,
    szpiro=6,
)

THEOREMS: Dict[int, TheoremTable] = {
    4: TheoremTable(
        4,
        SQUAREFREE,
        (
            disc(1, {2: 4, 3: 1}), disc(1, {2: 4, 5: 1}), disc(1, {2: 4, 3: 7}),
            disc(1, {2: 8, 7: 1}), disc(1, {2: 8, 3: 2}), disc(1, {2: 8, 7: 7}),
            disc(1, {3: 2, 7: 1}), disc(1, {3: 2, 5: 2}),
        ),
        N4_FAMILIES,
        32,
        signed=False,
        unlisted=(UnlistedCurve(disc(1, {3: 1, 5: 1}), "15a8", -1, 1),),
        listed_szpiro=8,
    ),
    5: TheoremTable(
        5,
        PRIME_POWER,
        (
            disc(1, {2: 5, 5: 2}), disc(1, {2: 15, 5: 2}), disc(1, {3: 5, 5: 2}),
            disc(1, {13: 5, 5: 2}), disc(1, {37: 5, 31: 2}), disc(1, {7: 5, 5: 3}),
        ),
        (N5_OPEN_FAMILY,),
        6,
        signed=False,
    ),
    6: TheoremTable(
        6,
        PRIME_POWER,
        (
            disc(1, {2: 1, 7: 2}), disc(-1, {2: 2, 7: 1}), disc(1, {2: 3, 7: 6}),
            disc(1, {2: 4, 5: 1}), disc(-1, {2: 4, 3: 3}), disc(1, {2: 6, 17: 1}),
            disc(-1, {2: 6, 7: 3}), disc(1, {2: 8, 3: 3}), disc(-1, {2: 8, 5: 2}),
        ),
        (),
        6,
        unlisted=(UnlistedCurve(disc(1, {2: 3, 17: 2}), "34a1", -1, 17),),
    ),
    7: TheoremTable(7, PRIME_POWER, (disc(-1, {2: 7, 13: 1}),), (), 3),
    8: TheoremTable(
        8,
        PRIME_POWER,
        (disc(-1, {2: 11, 3: 8}),),
        (),
        7,
        unlisted=(
            UnlistedCurve(disc(1, {3: 8, 7: 1}), "21a", -1, 2),
            UnlistedCurve(disc(-1, {3: 2, 5: 8}), "15a4", 1, 6),
        ),
    ),
    9: TheoremTable(9, PRIME_POWER, (disc(-1, {2: 9, 3: 5}),), (), 5),
    10: TheoremTable(10, PRIME_POWER, (), (), None),
    12: TheoremTable(12, PRIME_POWER, (), (), None),
}

# Conductor exponents stated for the single N=8 and N=9 curves
CLAIMED_CONDUCTORS: Dict[int, Factorization] = {
    8: disc(1, {2: 2, 3: 1}),
    9: disc(1, {2: 1, 3: 2}),
}

# prime conductor p: |disc_min| is p or p^2, except for these
PRIME_CONDUCTOR_EXCEPTIONS: Dict[int, int] = {11: 5, 17: 4, 19: 3, 37: 3}


def theorem(N: int) -> TheoremTable:
    if N not in THEOREMS:
        raise DomainError(f"no table for N={N}; N must be one of {tuple(THEOREMS)}")
    return THEOREMS[N]


def match_family(table: TheoremTable, disc_min: Factorization) -> Optional[DiscFamily]:
    target = disc_min if table.signed else disc_min.absolute()
    for family in table.expected_families:
        if family.matches(target):
            return family
    return None


def families_matching(table: TheoremTable, disc_min: Factorization) -> Tuple[str, ...]:
    target = disc_min if table.signed else disc_min.absolute()
    return tuple(f.name for f in table.expected_families if f.matches(target))


def szpiro_bounds(table: TheoremTable) -> Dict[str, int]:
    """Exponent per match label ("listed" or a family name) where one is known."""
    bounds = {f.name: f.szpiro for f in table.expected_families if f.szpiro is not None}
    if table.listed_szpiro is not None:
        bounds["listed"] = table.listed_szpiro
    return bounds


def prime_conductor_allowed(p: int, disc_min: Factorization) -> bool:
    if disc_min.primes != (p,):
        return False
    e = disc_min.exponent(p)
    return e in (1, 2) or PRIME_CONDUCTOR_EXCEPTIONS.get(p) == e
