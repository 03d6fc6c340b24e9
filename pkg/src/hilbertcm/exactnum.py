"""Exact integer and rational utilities.

Valuations, factorization, and the Kronecker and Hilbert symbols over every
place of Q.  Everything here is exact: inputs are ints or Fractions, never
floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

#: Marker for the archimedean (real) place of Q.
ARCHIMEDEAN = "oo"

# Witnesses making Miller-Rabin deterministic for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid far past 64 bits)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(2, n + 1) if sieve[i]]


def padic_valuation(x: int, p: int) -> int:
    """Largest e with p**e dividing x.  Requires x != 0 and p prime."""
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


@dataclass(frozen=True)
class Factorization:
    """Sign and ordered (prime, exponent) pairs with strictly increasing primes."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +-1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be >= 1")

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 by trial division.

    Inputs stay at desk scale (<= ~10**12), so trial division with an early
    primality exit on the remaining cofactor is plenty.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    factors: list[tuple[int, int]] = []
    m = n
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    d = 7
    while m > 1 and d * d <= m:
        if is_prime(m):
            break
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(1, tuple(factors))


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct primes dividing n >= 1, ascending."""
    return factorize(n).primes


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n >= 1."""
    if n < 1:
        raise ValueError("is_squarefree requires n >= 1")
    return all(e == 1 for _, e in factorize(n).factors)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for n != 0, multiplicative in both arguments."""
    if n == 0:
        raise ValueError("Kronecker symbol (a|0) is undefined here")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n via quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _legendre_unit(u: int, p: int) -> int:
    """Legendre symbol of a unit u modulo an odd prime p."""
    t = pow(u % p, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def _as_square_free_int(r: Fraction) -> int:
    # numerator*denominator lies in the same square class as r
    return r.numerator * r.denominator


def hilbert_symbol(a: int | Fraction, b: int | Fraction, v: int | str) -> int:
    """Hilbert symbol (a,b)_v at a prime v or the archimedean place.

    Equals 1 exactly when z**2 = a*x**2 + b*y**2 has a nontrivial solution in
    the completion of Q at v.  Computed by the closed unit formulas:

    * odd p:  (a,b)_p = (-1|p)^(alpha*beta) * (u|p)^beta * (w|p)^alpha,
    * p = 2:  (a,b)_2 = (-1)^(eps(u)eps(w) + alpha*omega(w) + beta*omega(u)),

    after writing a = p**alpha * u, b = p**beta * w with units u, w; here
    eps(u) = (u-1)/2 and omega(u) = (u**2-1)/8 mod 2.
    """
    if isinstance(a, float) or isinstance(b, float):
        raise TypeError("hilbert_symbol is exact; pass int or Fraction")
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    if v == ARCHIMEDEAN:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(v, int) or not is_prime(v):
        raise ValueError(f"{v!r} is not a place of Q")
    p = v
    ai = _as_square_free_int(a)
    bi = _as_square_free_int(b)
    alpha = padic_valuation(ai, p)
    beta = padic_valuation(bi, p)
    u = ai // p**alpha
    w = bi // p**beta
    if p != 2:
        sign = 1
        if alpha % 2 and beta % 2 and p % 4 == 3:
            sign = -sign
        if beta % 2 and _legendre_unit(u, p) == -1:
            sign = -sign
        if alpha % 2 and _legendre_unit(w, p) == -1:
            sign = -sign
        return sign
    exponent = ((u - 1) // 2) * ((w - 1) // 2)
    exponent += alpha * ((w * w - 1) // 8) + beta * ((u * u - 1) // 8)
    return -1 if exponent % 2 else 1


def relevant_places(a: int | Fraction, b: int | Fraction) -> list[int | str]:
    """Archimedean place plus primes dividing 2 or a numerator/denominator.

    Outside this list the Hilbert symbol (a,b)_v is 1, so the product formula
    can be checked over it.
    """
    places: set[int] = {2}
    for r in (Fraction(a), Fraction(b)):
        places.update(prime_factors(abs(r.numerator)))
        places.update(prime_factors(r.denominator))
    return [ARCHIMEDEAN] + sorted(places)
