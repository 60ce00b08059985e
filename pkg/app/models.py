from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple, Union

import gmpy2

from .errors import DomainError, ZeroInput

Rational = Union[int, Fraction]

TORSION_ORDERS = (4, 5, 6, 7, 8, 9, 10, 12)


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization of a nonzero integer."""

    sign: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ZeroInput("Factorization sign must be +1 or -1 (zero is not representable)")
        # deferred: services.arith imports this module
        from .services.arith import is_prime

        previous = 1
        for p, e in self.factors:
            if p <= previous or e < 1 or not is_prime(p):
                raise DomainError(f"Invalid prime factor entry ({p}, {e})")
            previous = p

    @property
    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p ** e
        return n

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def absolute(self) -> "Factorization":
        return Factorization(1, self.factors)

    def __str__(self):
        if not self.factors:
            return "-1" if self.sign < 0 else "1"
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return f"-{body}" if self.sign < 0 else body


@dataclass(frozen=True)
class TateParameter:
    """lambda = s/t for the curve with a point of order N at (0,0).

    Construction rejects parameters whose integral model is singular or whose
    clearing substitution divides by zero.
    """

    N: int
    s: int
    t: int

    def __post_init__(self):
        if self.N not in TORSION_ORDERS:
            raise DomainError(f"N must be one of {TORSION_ORDERS}, got {self.N}")
        if self.t == 0:
            raise DomainError("t must be nonzero")
        if gmpy2.gcd(self.s, self.t) != 1:
            raise DomainError(f"gcd(s, t) must be 1, got gcd({self.s}, {self.t})")
        # deferred: services.weierstrass imports this module
        from .services.weierstrass import check_parameter
        check_parameter(self.N, self.s, self.t)

    def canonical(self) -> "TateParameter":
        if self.t > 0:
            return self
        return TateParameter(self.N, -self.s, -self.t)


@dataclass(frozen=True)
class WeierstrassModel:
    a1: Rational
    a2: Rational
    a3: Rational
    a4: Rational
    a6: Rational

    @property
    def coefficients(self) -> Tuple[Rational, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.coefficients)

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"


@dataclass(frozen=True)
class Invariants:
    b2: Rational
    b4: Rational
    b6: Rational
    b8: Rational
    c4: Rational
    c6: Rational
    disc: Rational
    j: Optional[Fraction]


@dataclass(frozen=True)
class Point:
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point()


class Reduction(str, Enum):
    GOOD = "good"
    SPLIT = "multiplicative-split"
    NONSPLIT = "multiplicative-nonsplit"
    ADDITIVE = "additive"

    @property
    def is_multiplicative(self) -> bool:
        return self in (Reduction.SPLIT, Reduction.NONSPLIT)


@dataclass(frozen=True)
class LocalData:
    p: int
    ord_disc: int
    kodaira: str
    f_p: int
    m_p: int
    reduction: Reduction


@dataclass(frozen=True)
class GlobalData:
    minimal_model: WeierstrassModel
    scaling: int
    disc_min: Factorization
    conductor: Factorization
    locals: Tuple[LocalData, ...]


@dataclass(frozen=True)
class Family:
    """A one-parameter family of tuples, instantiable at integer parameters."""

    name: str
    parameter: str
    formula: str
    instantiate: Callable[[int], Tuple[int, ...]]


@dataclass(frozen=True)
class SolutionSet:
    equation_id: str
    solutions: Tuple[Tuple[int, ...], ...]
    families: Tuple[Family, ...] = ()
    search_bounds: Dict[str, int] = field(default_factory=dict)
    # in-range members of families without a completeness proof
    flagged: Tuple[Tuple[int, ...], ...] = ()
    rejected: Tuple[Tuple[Tuple[int, ...], str], ...] = ()


@dataclass(frozen=True)
class CurveRecord:
    param: TateParameter
    minimal_model: WeierstrassModel
    disc_min: Factorization
    conductor: Factorization
    szpiro_ratio: float
    torsion_verified: int
    scaling: int = 1
    locals: Tuple[LocalData, ...] = ()


@dataclass(frozen=True)
class DiscFamily:
    """Symbolic shape of |disc_min| (or disc_min) such as 2^(2k+4)*p."""

    name: str
    description: str
    matches: Callable[[Factorization], bool]
    is_open: bool = False
    # exponent K with |disc| <= conductor^K on this family, when known
    szpiro: Optional[int] = None


@dataclass(frozen=True)
class UnlistedCurve:
    """A curve the enumeration finds that the published list for its N omits."""

    disc: Factorization
    label: str
    s: int
    t: int


@dataclass(frozen=True)
class TheoremTable:
    N: int
    mode: str
    expected_discs: Tuple[Factorization, ...]
    expected_families: Tuple[DiscFamily, ...]
    szpiro_exponent: Optional[int]
    signed: bool = True
    # curves known to be missing from expected_discs
    unlisted: Tuple[UnlistedCurve, ...] = ()
    # exponent K for the explicitly listed discriminants
    listed_szpiro: Optional[int] = None


@dataclass(frozen=True)
class VerificationReport:
    N: int
    bound: int
    mode: str
    records: Tuple[CurveRecord, ...]
    matched: Tuple[Tuple[str, str], ...]
    unwitnessed: Tuple[str, ...]
    violations: Tuple[str, ...]
    open_family: Tuple[str, ...] = ()
    szpiro: Optional["SzpiroReport"] = None
    discrepancies: Tuple[str, ...] = ()
    # (disc, label) of enumerated curves found in the table's unlisted entries
    unlisted: Tuple[Tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations and (self.szpiro is None or self.szpiro.ok)


@dataclass(frozen=True)
class SzpiroReport:
    K: int
    count: int
    max_ratio: float
    failures: Tuple[str, ...] = ()
    by_family: Dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures
