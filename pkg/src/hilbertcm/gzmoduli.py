"""The degenerate case: factorization of differences of singular moduli.

Here the field input degenerates to a pair of coprime negative fundamental
discriminants d1, d2 = 1 mod 4 with Dtilde = d1*d2.  The per-prime formula is
the same shape as the main one, with the symbol (-alpha_l, l)_l replaced by
the character value eps(l) and the summation running over positive n with
(Dtilde - n**2)/4 a positive multiple of p.

An independent oracle evaluates sum 4/(w1*w2) * log|j(tau1) - j(tau2)| over
Heegner points by the q-expansion j = E4**3/Delta at arbitrary precision;
exp of the formula's output must match it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import mpmath
from mpmath import mp

from .exactnum import (
    is_squarefree,
    kronecker_symbol,
    padic_valuation,
    prime_factors,
)
from .intersect import IntersectionResult


class GzInputError(ValueError):
    """Raised for an invalid discriminant pair."""


@dataclass(frozen=True)
class GzParams:
    """A pair of negative coprime fundamental discriminants, both 1 mod 4."""

    d1: int
    d2: int

    def __post_init__(self) -> None:
        for d in (self.d1, self.d2):
            if d >= 0:
                raise GzInputError(f"{d} is not negative")
            if d % 4 != 1:
                raise GzInputError(f"{d} is not 1 mod 4")
            if not is_squarefree(-d):
                raise GzInputError(f"{d} is not a fundamental discriminant")
        g = gcd(self.d1, self.d2)
        if g != 1:
            raise GzInputError(f"d1, d2 share the factor {g}")

    @property
    def dtilde(self) -> int:
        return self.d1 * self.d2


def epsilon_of(l: int, params: GzParams) -> int:
    """The character value at l: (d1|l) when l does not divide d1, else (d2|l)."""
    if params.d1 % l:
        return kronecker_symbol(params.d1, l)
    if params.d2 % l:
        return kronecker_symbol(params.d2, l)
    raise GzInputError(f"{l} divides both discriminants")


def _beta_l(params: GzParams, p: int, m: int, l: int) -> Fraction:
    t = padic_valuation(m, l)
    eps = epsilon_of(l, params)
    if l == p:
        return Fraction(1 - eps**t, 2)
    if eps == -1:
        return Fraction(1 + (-1) ** t, 2)
    return Fraction(t + 1)


def _admissible_m(params: GzParams) -> list[tuple[int, int]]:
    """All (n, m) with n > 0 and m = (d1*d2 - n**2)/4 a positive integer."""
    dtilde = params.dtilde
    out = []
    for n in range(1, isqrt(dtilde) + 1):
        rem = dtilde - n * n
        if rem > 0 and rem % 4 == 0:
            out.append((n, rem // 4))
    return out


def gz_intersection_at_p(params: GzParams, p: int) -> Fraction:
    """Coefficient of log p in the degenerate-case intersection number."""
    total = Fraction(0)
    for _n, m in _admissible_m(params):
        if m % p:
            continue
        prod = Fraction(1)
        for l in prime_factors(m):
            prod *= _beta_l(params, p, m, l)
            if prod == 0:
                break
        total += (padic_valuation(m, p) + 1) * prod
    return total / 2


def gz_total(params: GzParams) -> IntersectionResult:
    """The full formal sum for the pair (d1, d2); support primes are at most
    d1*d2/4."""
    candidates: set[int] = set()
    for _n, m in _admissible_m(params):
        candidates.update(prime_factors(m))
    terms: dict[int, Fraction] = {}
    for p in sorted(candidates):
        c = gz_intersection_at_p(params, p)
        if c:
            assert 4 * p <= params.dtilde, "support bound violated"
            assert c > 0 and (2 * c).denominator == 1
            terms[p] = c
    return IntersectionResult(terms, f"d1={params.d1}, d2={params.d2}")


@dataclass(frozen=True)
class HeegnerForm:
    """A reduced integral binary quadratic form A*x**2 + B*x*y + C*y**2."""

    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def __post_init__(self) -> None:
        if self.A <= 0:
            raise ValueError("A must be positive")
        if not (abs(self.B) <= self.A <= self.C):
            raise ValueError(f"{self} is not reduced")
        if self.B < 0 and (abs(self.B) == self.A or self.A == self.C):
            raise ValueError(f"{self} is not reduced (boundary sign)")


def reduced_forms(d: int) -> tuple[HeegnerForm, ...]:
    """One reduced primitive form per class of discriminant d < 0; the count
    is the class number h(d)."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    forms = []
    for b in range(d % 2, isqrt(-d // 3) + 1, 2):
        rem4 = b * b - d
        if rem4 % 4:
            continue
        rem = rem4 // 4  # = A*C
        for a in range(max(b, 1), isqrt(rem) + 1):
            if rem % a:
                continue
            c = rem // a
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(HeegnerForm(a, b, c))
            if 0 < b < a < c:
                forms.append(HeegnerForm(a, -b, c))
    return tuple(sorted(forms, key=lambda f: (f.A, abs(f.B), -f.B, f.C)))


def class_number(d: int) -> int:
    return len(reduced_forms(d))


def _unit_count(d: int) -> int:
    if d == -3:
        return 6
    if d == -4:
        return 4
    return 2


def _series_length(q_abs: mpmath.mpf, tol: mpmath.mpf) -> int:
    """Truncation length N with both q-series tails rigorously below tol.

    For |q| <= 0.07 and n >= 8 the ratio of consecutive majorant terms
    240*n**4*|q|**n is below ((9/8)**4)*0.07 < 0.12, so the E4 tail after N
    is at most 240*(N+1)**4*|q|**(N+1)/(1-0.12) < 480*(N+1)**4*|q|**(N+1).
    The eta-product tail 24*sum_{n>N}|q|**n/(1-|q|) is smaller still.
    """
    if q_abs > mp.mpf("0.07"):
        raise ValueError("truncation bound requires |q| <= 0.07")
    n = 8
    while 480 * mp.mpf(n + 1) ** 4 * q_abs ** (n + 1) > tol:
        n += 1
    return n


def _sigma3_table(n: int) -> list[int]:
    table = [0] * (n + 1)
    for d in range(1, n + 1):
        cube = d * d * d
        for k in range(d, n + 1, d):
            table[k] += cube
    return table


def j_invariant(form: HeegnerForm) -> mpmath.mpc:
    """j at tau = (-B + sqrt(d))/(2A) via E4**3/Delta, at the ambient mp
    precision (callers set mp.workdps with guard digits)."""
    d = form.discriminant
    tau = (-form.B + mp.sqrt(mp.mpc(d))) / (2 * form.A)
    q = mp.exp(2j * mp.pi * tau)
    tol = mp.mpf(10) ** (-(mp.dps - 5))
    n_terms = _series_length(abs(q), tol)
    sigma3 = _sigma3_table(n_terms)
    qpow = [mp.mpc(1)]
    for _ in range(n_terms):
        qpow.append(qpow[-1] * q)
    e4 = 1 + 240 * mp.fsum(sigma3[n] * qpow[n] for n in range(1, n_terms + 1))
    disc = q
    for n in range(1, n_terms + 1):
        disc *= (1 - qpow[n]) ** 24
    return e4**3 / disc


def singular_moduli_log(params: GzParams, precision: int = 100) -> mpmath.mpf:
    """sum over class pairs of 4/(w1*w2) * log|j(tau1) - j(tau2)|, computed to
    `precision` decimal digits with guard digits on top."""
    if precision < 30:
        raise ValueError("precision must be at least 30 digits")
    with mp.workdps(precision + 20):
        js1 = [j_invariant(f) for f in reduced_forms(params.d1)]
        js2 = [j_invariant(f) for f in reduced_forms(params.d2)]
        total = mp.mpf(0)
        for j1 in js1:
            for j2 in js2:
                total += mp.log(abs(j1 - j2))
        weight = mp.mpf(4) / (_unit_count(params.d1) * _unit_count(params.d2))
        return weight * total


def formal_sum_log(result: IntersectionResult, precision: int = 100) -> mpmath.mpf:
    """Evaluate sum c_p * log p at `precision` digits, for oracle comparison."""
    with mp.workdps(precision + 20):
        return mp.fsum(
            mp.mpf(c.numerator) / c.denominator * mp.log(p)
            for p, c in result.terms.items()
        )


def gz_discrepancy(params: GzParams, precision: int = 100) -> mpmath.mpf:
    """|formula - oracle| in log space at the requested precision."""
    with mp.workdps(precision + 20):
        formula = formal_sum_log(gz_total(params), precision)
        oracle = singular_moduli_log(params, precision)
        return abs(formula - oracle)
