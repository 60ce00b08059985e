"""
Bounded searches for the exponential Diophantine equations behind the
classification, plus the Pell and Mordell equations met along the way.

Each search is exhaustive inside its bounds and returns a SolutionSet whose
tuples are sorted, so the same bounds always give the same output.
"""
import logging
from typing import Dict, List, Optional, Set, Tuple

import gmpy2

from ..errors import DomainError, NoSolution
from ..models import Family, SolutionSet
from .arith import is_prime, is_prime_power, perfect_power, small_primes

logger = logging.getLogger(__name__)

EQUATIONS = ("catalan", "lemma22", "lemma23", "lemma24", "cor25", "pell125", "mordell2000", "x2pm16")

PELL_D = 125
# (11 + sqrt(125)) / 2, stored as the pair (11, 1)
PELL_UNIT = (11, 1)


def _power_roots(v: int) -> List[Tuple[int, int]]:
    """All (y, l) with y > 0, l >= 2 and y^l = |v|."""
    v = abs(v)
    if v < 2:
        return []
    pp = perfect_power(v, 2)
    if pp is None:
        return []
    base, e = pp
    return [(base ** (e // l), l) for l in range(2, e + 1) if e % l == 0]


def catalan_search(B: int) -> SolutionSet:
    """x^m - y^n = 1 with m, n > 1 and 2 <= |x|, |y| <= B."""
    if B < 2:
        raise DomainError(f"bound must be >= 2, got {B}")
    max_exp = max(3, B.bit_length())
    powers: Dict[int, List[Tuple[int, int]]] = {}
    for base in range(2, B + 1):
        for sign in (1, -1):
            y = sign * base
            for n in range(2, max_exp + 1):
                powers.setdefault(y ** n, []).append((y, n))
    found: Set[Tuple[int, ...]] = set()
    for value, reps in powers.items():
        for y, n in powers.get(value - 1, []):
            for x, m in reps:
                found.add((x, m, y, n))
    return SolutionSet("catalan", tuple(sorted(found)), search_bounds={"B": B, "max_exp": max_exp})


def lemma22_search(P: int, M: int) -> SolutionSet:
    """16 p^m + 1 = y^n with |p| prime <= P, 1 < m <= M, n prime, y a prime power."""
    if P < 3 or M < 2:
        raise DomainError("lemma22_search needs P >= 3 and M >= 2")
    found = set()
    for q in small_primes():
        if q > P:
            break
        for p in (q, -q):
            for m in range(2, M + 1):
                v = 16 * p ** m + 1
                for y, n in _power_roots(v):
                    if v < 0:
                        if n % 2 == 0:
                            continue
                        y = -y
                    if is_prime(n) and is_prime_power(y):
                        found.add((p, m, y, n))
    return SolutionSet("lemma22", tuple(sorted(found)), search_bounds={"P": P, "M": M})


def _lemma23_family() -> Family:
    return Family(
        name="h-family",
        parameter="h",
        formula="(2^(h-2)-1, 2^(h-2)+1, h, 2)",
        instantiate=lambda h: (2 ** (h - 2) - 1, 2 ** (h - 2) + 1, h, 2),
    )


def lemma23_search(H: int, B: int) -> SolutionSet:
    """x^2 + 2^h = y^n with x, y <= B positive, y odd, h in [3, H], n > 1."""
    if H < 3 or B < 10:
        raise DomainError("lemma23_search needs H >= 3 and B >= 10")
    found = set()
    for h in range(3, H + 1):
        # n = 2: (y - x)(y + x) = 2^h
        for a in range(1, h):
            if a >= h - a:
                break
            y, x = (2 ** a + 2 ** (h - a)) // 2, (2 ** (h - a) - 2 ** a) // 2
            if y % 2 and 0 < x <= B and y <= B:
                found.add((x, y, h, 2))
    top = B * B + 2 ** H
    for y in range(3, B + 1, 2):
        if y ** 3 > top:
            break
        n = 3
        while y ** n <= top:
            for h in range(3, H + 1):
                rest = y ** n - 2 ** h
                if rest <= 0:
                    break
                x, exact = gmpy2.iroot(rest, 2)
                if exact and 0 < x <= B:
                    found.add((int(x), y, h, n))
            n += 1
    return SolutionSet(
        "lemma23",
        tuple(sorted(found)),
        families=(_lemma23_family(),),
        search_bounds={"H": H, "B": B},
    )


def lemma24_search(B: int, L: int) -> SolutionSet:
    """x^2 - 125 = +-4 y^l with y > 0, 1 < l <= L, |x| <= B.

    Solutions with the + sign, l odd and 5 not dividing x belong to a case
    that is only known to be finite; they are returned in ``flagged``.
    """
    if B < 70 or L < 3:
        raise DomainError("lemma24_search needs B >= 70 and L >= 3")
    found, flagged = set(), set()
    for x in range(-B, B + 1):
        if x % 2 == 0:
            continue
        v, r = divmod(x * x - 125, 4)
        if r:
            continue
        if abs(v) == 1:
            for l in range(2, L + 1):
                found.add((x, 1, l))
            continue
        for y, l in _power_roots(v):
            if l > L:
                continue
            if v > 0 and l % 2 and x % 5:
                flagged.add((x, y, l))
            else:
                found.add((x, y, l))
    if flagged:
        logger.warning("lemma24: %d solution(s) in the open case l odd, 5 | x false", len(flagged))
    return SolutionSet(
        "lemma24",
        tuple(sorted(found)),
        families=(
            Family("y=1", "l", "(+-11, 1, l)", lambda l: (11, 1, l)),
        ),
        search_bounds={"B": B, "L": L},
        flagged=tuple(sorted(flagged)),
    )


def cor25_filter(B: int, L: int) -> SolutionSet:
    """s^2 - 11s - 1 = +-y^l with |s| a prime power, read off from x = 2s - 11."""
    base = lemma24_search(B, L)
    kept, flagged, rejected = set(), set(), []

    def convert(x, y, l):
        s = (x + 11) // 2
        if not is_prime_power(s):
            return None, "not a prime power"
        if y != 1 and not is_prime_power(y):
            return None, "y is not a prime power"
        return (s, y, l), None

    for x, y, l in base.solutions:
        entry, reason = convert(x, y, l)
        if entry:
            kept.add(entry)
        else:
            rejected.append((((x + 11) // 2, y, l), reason))
    for x, y, l in base.flagged:
        entry, reason = convert(x, y, l)
        if entry:
            flagged.add(entry)
        else:
            rejected.append((((x + 11) // 2, y, l), reason))
    return SolutionSet(
        "cor25",
        tuple(sorted(kept)),
        families=(Family("y=1", "l", "(11, 1, l)", lambda l: (11, 1, l)),),
        search_bounds={"B": B, "L": L},
        flagged=tuple(sorted(flagged)),
        rejected=tuple(sorted(rejected)),
    )


def _pell_mul(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
    # ((x1 + y1 r)/2) * ((x2 + y2 r)/2) with r^2 = 125
    x1, y1 = a
    x2, y2 = b
    return (x1 * x2 + PELL_D * y1 * y2) // 2, (x1 * y2 + x2 * y1) // 2


def pell_125(c: int, count: int) -> List[Tuple[int, int]]:
    """First ``count`` solutions of x^2 - 125 y^2 = c (c = +-4) with y > 0.

    Powers of the unit (11 + sqrt(125))/2 have norm (-1)^k, so odd powers
    solve the -4 equation and even powers the +4 equation.
    """
    if c not in (4, -4):
        raise DomainError(f"c must be +4 or -4, got {c}")
    if count < 1:
        raise DomainError("count must be >= 1")
    out = []
    element, k = PELL_UNIT, 1
    while len(out) < count:
        x, y = element
        norm = x * x - PELL_D * y * y
        if norm == c:
            out.append((x, y))
        elif abs(norm) != 4:
            raise NoSolution(f"unit power {k} has norm {norm}")
        element = _pell_mul(element, PELL_UNIT)
        k += 1
    return out


def pell_brute_force(c: int, max_y: int) -> List[Tuple[int, int]]:
    out = []
    for y in range(1, max_y + 1):
        v = PELL_D * y * y + c
        if v > 0 and gmpy2.is_square(v):
            out.append((int(gmpy2.isqrt(v)), y))
    return out


def pell_solution_set(c: int, count: int) -> SolutionSet:
    return SolutionSet(
        "pell125",
        tuple(pell_125(c, count)),
        families=(Family("unit-powers", "k", "((11+sqrt(125))/2)^k", lambda k: _pell_power(k)),),
        search_bounds={"c": c, "count": count},
    )


def _pell_power(k: int) -> Tuple[int, int]:
    element = (2, 0)
    for _ in range(k):
        element = _pell_mul(element, PELL_UNIT)
    return element


def mordell_search(k: int, B: int) -> SolutionSet:
    """X^2 - k = Y^3 with |Y| <= B."""
    if B < 1:
        raise DomainError("bound must be positive")
    found = set()
    for Y in range(-B, B + 1):
        v = Y ** 3 + k
        if v < 0 or not gmpy2.is_square(v):
            continue
        X = int(gmpy2.isqrt(v))
        found.add((X, Y))
        found.add((-X, Y))
    return SolutionSet(f"mordell{k}", tuple(sorted(found)), search_bounds={"k": k, "B": B})


def x2pm16_search(P: int, A: int) -> SolutionSet:
    """p^(2a) +- 16 = +-q^b with p an odd prime <= P, 1 <= a <= A, q prime, b > 1."""
    if P < 3 or A < 1:
        raise DomainError("x2pm16_search needs P >= 3 and A >= 1")
    found = set()
    for p in small_primes()[1:]:
        if p > P:
            break
        for a in range(1, A + 1):
            for sign in (1, -1):
                v = p ** (2 * a) + 16 * sign
                for q, b in _power_roots(v):
                    if is_prime(q):
                        found.add((p, a, sign, q, b))
    return SolutionSet("x2pm16", tuple(sorted(found)), search_bounds={"P": P, "A": A})


def verify_solution(equation_id: str, solution: Tuple[int, ...], k: Optional[int] = None) -> bool:
    """Substitute a tuple back into its defining equation."""
    if equation_id == "catalan":
        x, m, y, n = solution
        return x ** m - y ** n == 1
    if equation_id == "lemma22":
        p, m, y, n = solution
        return 16 * p ** m + 1 == y ** n
    if equation_id == "lemma23":
        x, y, h, n = solution
        return x * x + 2 ** h == y ** n
    if equation_id == "lemma24":
        x, y, l = solution
        return abs(x * x - 125) == 4 * y ** l
    if equation_id == "cor25":
        s, y, l = solution
        return abs(s * s - 11 * s - 1) == y ** l
    if equation_id == "pell125":
        x, y = solution
        return abs(x * x - PELL_D * y * y) == 4
    if equation_id.startswith("mordell"):
        X, Y = solution
        return X * X - (2000 if k is None else k) == Y ** 3
    if equation_id == "x2pm16":
        p, a, sign, q, b = solution
        return abs(p ** (2 * a) + 16 * sign) == q ** b
    raise DomainError(f"unknown equation id {equation_id!r}")
