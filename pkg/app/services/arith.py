"""
Integer arithmetic for the classification: primality, factorization,
prime-power / perfect-power structure, valuations and Legendre symbols.

Everything here is a pure function of its arguments. The only state is the
prime sieve and an lru_cache on factorizations of small integers, both safe
to share between threads.
"""
import logging
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

import gmpy2

from ..errors import DomainError, ZeroInput
from ..models import Factorization

logger = logging.getLogger(__name__)

TRIAL_LIMIT = 10 ** 6
# Miller-Rabin with the primes up to 41 is exact below this bound
DETERMINISTIC_LIMIT = 3317044064679887385961981
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=1)
def small_primes() -> Tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(TRIAL_LIMIT ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """True iff |n| is prime.

    Deterministic below DETERMINISTIC_LIMIT; above it a BPSW test is used,
    which has no known counterexample.
    """
    n = abs(int(n))
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < DETERMINISTIC_LIMIT:
        return all(gmpy2.is_strong_prp(n, a) for a in MR_WITNESSES)
    return bool(gmpy2.is_bpsw_prp(n))


def _brent(n: int, seed: int) -> Optional[int]:
    # f(x) = x^2 + c, c and x0 derived from the seed so runs are reproducible
    c = seed % (n - 1) + 1
    y = (seed * 7 + 2) % n
    m = 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (gmpy2.powmod(y, 2, n) + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (gmpy2.powmod(y, 2, n) + c) % n
                q = q * abs(x - y) % n
            g = int(gmpy2.gcd(q, n))
            k += m
        r *= 2
    if g == n:
        # the batched gcd overshot; step back one value at a time
        g = 1
        while g == 1:
            ys = (gmpy2.powmod(ys, 2, n) + c) % n
            g = int(gmpy2.gcd(abs(x - ys), n))
    if g == n:
        return None
    return g


def _split(n: int, out: Dict[int, int]):
    """Fully factor n (which has no prime factor below TRIAL_LIMIT) into out."""
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    power = perfect_power(n, 2)
    if power:
        base, exp = power
        for _ in range(exp):
            _split(base, out)
        return
    seed = 1
    divisor = None
    while divisor is None:
        divisor = _brent(n, seed)
        seed += 1
    logger.debug("pollard-brent split %d = %d * %d", n, divisor, n // divisor)
    _split(divisor, out)
    _split(n // divisor, out)


@lru_cache(maxsize=1 << 16)
def _factor_positive(m: int) -> Tuple[Tuple[int, int], ...]:
    found: Dict[int, int] = {}
    for p in small_primes():
        if p * p > m:
            break
        if m % p == 0:
            m, e = gmpy2.remove(m, p)
            m = int(m)
            found[p] = int(e)
    else:
        if m > 1:
            _split(m, found)
            m = 1
    if m > 1:
        found[m] = found.get(m, 0) + 1
    return tuple(sorted(found.items()))


def factor(n: int) -> Factorization:
    if n == 0:
        raise ZeroInput("cannot factor 0")
    return Factorization(1 if n > 0 else -1, _factor_positive(abs(int(n))))


def factor_product(parts: Iterable[Tuple[int, int]]) -> Factorization:
    """Factor prod(b^e) from (base, exponent) pairs without expanding it."""
    sign = 1
    total: Dict[int, int] = {}
    for base, e in parts:
        if base == 0:
            raise ZeroInput("product contains a zero factor")
        if base < 0 and e % 2:
            sign = -sign
        for p, k in _factor_positive(abs(base)):
            total[p] = total.get(p, 0) + k * e
    return Factorization(sign, tuple(sorted(total.items())))


def from_exponents(sign: int, exponents: Dict[int, int]) -> Factorization:
    return Factorization(sign, tuple(sorted((p, e) for p, e in exponents.items() if e > 0)))


def perfect_power(n: int, min_exp: int = 2) -> Optional[Tuple[int, int]]:
    m = abs(int(n))
    if m < 2:
        raise DomainError(f"perfect_power needs |n| >= 2, got {n}")
    exp = 1
    reduced = True
    while reduced:
        reduced = False
        for k in small_primes():
            if k > m.bit_length():
                break
            root, exact = gmpy2.iroot(m, k)
            if exact:
                m = int(root)
                exp *= k
                reduced = True
                break
    if exp < min_exp:
        return None
    return m, exp


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    m = abs(int(n))
    if m < 2:
        return None
    if is_prime(m):
        return m, 1
    pp = perfect_power(m, 2)
    if pp and is_prime(pp[0]):
        return pp
    return None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ZeroInput("valuation of 0 is infinite")
    if not is_prime(p) or p < 0:
        raise DomainError(f"{p} is not a prime")
    return int(gmpy2.remove(abs(int(n)), p)[1])


def legendre_symbol(a: int, p: int) -> int:
    if p < 3 or not is_prime(p):
        raise DomainError(f"Legendre symbol needs an odd prime, got {p}")
    r = int(gmpy2.powmod(a % p, (p - 1) // 2, p))
    return -1 if r == p - 1 else r
