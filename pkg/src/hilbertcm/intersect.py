"""The intersection-number formulas and the independent b1 cross-check path.

Route one (closed form): per admissible n and prime l | (Dtilde - n**2)/(4D),
a local factor beta_l built from the Hilbert symbol (-alpha_l, l)_l of a unit
diagonal entry of T(mu*n); the per-prime intersection number is

    (1/2) * sum_n (t_p + 1) * sum_mu  prod_l beta_l.

Route two (reflex side): b1(p) counts ideals of given relative norm in the
reflex CM field via rho-factors, driven by the splitting behaviour of each
prime.  The two routes share nothing past the T matrices, and the identity
b1(p) = 2 * (intersection at p) is the project's main cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactnum import (
    hilbert_symbol,
    is_prime,
    kronecker_symbol,
    padic_valuation,
    prime_factors,
    primes_up_to,
)
from .quadcm import CmFieldData
from .tmatrix import TMatrix, admissible_n, build_tmatrix

log = logging.getLogger(__name__)

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


@dataclass(frozen=True)
class LocalFactor:
    """Per-prime data entering the closed-form product."""

    l: int
    alpha: int
    t_l: int
    symbol: int
    beta: Fraction


@dataclass(frozen=True)
class ReflexLocalData:
    """Per-prime splitting data entering the b1 product."""

    l: int
    splitting_in_Ftilde: str  # split | ramified (inert cannot occur for l | det)
    splitting_in_Ktilde: str  # split | inert | ramified
    ord_at_chosen_prime: int


@dataclass(frozen=True)
class IntersectionResult:
    """A formal sum  sum_p c_p * log p, stored as prime -> exact coefficient."""

    terms: Mapping[int, Fraction]
    descriptor: str

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def formal_sum(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*log {p}" for p, c in sorted(self.terms.items()))


def alpha_unit(T: TMatrix, l: int) -> int:
    """A diagonal entry of T that is a unit at l; for l = 2 this is the entry
    that is -1 mod 4.  Requires l | (Dtilde - n**2)/(4D)."""
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    if T.quarter_det % l:
        raise ValueError(f"{l} does not divide (Dtilde - n**2)/(4D) = {T.quarter_det}")
    if T.a % l:
        return T.a
    if T.c % l:
        return T.c
    raise ValueError(
        f"{l} divides both diagonal entries of {T.entries()}; matrix is corrupted"
    )


def beta_l(p: int, T: TMatrix, l: int) -> Fraction:
    """The local factor at l of the closed-form product for the prime p."""
    m = T.quarter_det
    if m % l:
        raise ValueError(f"{l} does not divide {m}")
    t = padic_valuation(m, l)
    sym = hilbert_symbol(-alpha_unit(T, l), l, l)
    if l == p:
        return Fraction(1 - sym**t, 2)
    if sym == -1:
        return Fraction(1 + (-1) ** t, 2)
    return Fraction(t + 1)


def local_factors(p: int, T: TMatrix) -> tuple[LocalFactor, ...]:
    """The LocalFactor list over the distinct primes dividing
    (Dtilde - n**2)/(4D), ascending."""
    out = []
    for l in prime_factors(T.quarter_det):
        alpha = alpha_unit(T, l)
        out.append(
            LocalFactor(
                l=l,
                alpha=alpha,
                t_l=padic_valuation(T.quarter_det, l),
                symbol=hilbert_symbol(-alpha, l, l),
                beta=beta_l(p, T, l),
            )
        )
    return tuple(out)


def beta_product(p: int, T: TMatrix) -> Fraction:
    """Product of beta_l over the primes dividing (Dtilde - n**2)/(4D)."""
    m = T.quarter_det
    if m % p:
        raise ValueError(f"(Dtilde - n**2)/(4D) = {m} is not a positive multiple of {p}")
    prod = Fraction(1)
    for l in prime_factors(m):
        prod *= beta_l(p, T, l)
        if prod == 0:
            break
    return prod


def _terms_at_p(cm: CmFieldData, p: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """Admissible (n, t_p, mu-list) with p dividing (Dtilde - n**2)/(4D)."""
    out = []
    for n, mus in admissible_n(cm):
        m = (cm.dtilde - n * n) // (4 * cm.D)
        if m % p == 0:
            out.append((n, padic_valuation(m, p), mus))
    return out


def intersection_at_p(cm: CmFieldData, p: int) -> Fraction:
    """The coefficient of log p in the intersection number (closed form)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = Fraction(0)
    for n, t_p, mus in _terms_at_p(cm, p):
        inner = sum(beta_product(p, build_tmatrix(cm, n, mu)) for mu in mus)
        total += (t_p + 1) * inner
    return total / 2


def candidate_primes(cm: CmFieldData) -> list[int]:
    """Primes that can possibly support the intersection: divisors of some
    (Dtilde - n**2)/(4D)."""
    out: set[int] = set()
    for n, _ in admissible_n(cm):
        out.update(prime_factors((cm.dtilde - n * n) // (4 * cm.D)))
    return sorted(out)


def intersection_total(cm: CmFieldData) -> IntersectionResult:
    """The full formal sum; support is contained in primes <= Dtilde/(4D)."""
    terms: dict[int, Fraction] = {}
    for p in candidate_primes(cm):
        c = intersection_at_p(cm, p)
        if c:
            assert 4 * cm.D * p <= cm.dtilde, "support bound violated"
            assert c > 0 and (2 * c).denominator == 1, "coefficient not in (1/2)Z>=0"
            terms[p] = c
    return IntersectionResult(terms, cm.describe())


def split_in_Ktilde(
    T: TMatrix, l: int, chosen_prime_is_relative_discriminant: bool = False
) -> str:
    """Splitting of the chosen prime above l in the reflex CM field.

    The flag marks the corner where the chosen prime itself divides the
    relative discriminant (norm D); then it is ramified.  Otherwise the
    prime is split exactly when (-alpha_l, l)_l = 1, with alpha_l = a in the
    special case l = D.
    """
    if chosen_prime_is_relative_discriminant:
        return RAMIFIED
    D = T.cm.D
    if T.quarter_det % l == 0:
        alpha = alpha_unit(T, l)
        if l == D:
            # The chosen prime sits over l = D but is not the ramified one;
            # here D never divides n and the unit entry is a.
            log.debug(
                "relative-discriminant place hit: l = D = %d at n = %d", D, T.n
            )
            assert T.n % D != 0 and T.a % D != 0
            alpha = T.a
    elif l == D:
        if T.a % D == 0:
            raise ValueError("a is not a unit at D; cannot classify")
        alpha = T.a
    else:
        raise ValueError(f"{l} must divide (Dtilde - n**2)/(4D) or equal D")
    return SPLIT if hilbert_symbol(-alpha, l, l) == 1 else INERT


def rho_local(splitting: str, ord: int) -> int:
    """One rho-factor: ideal counts of given valuation at a place of the
    reflex quadratic field, by splitting type in the reflex CM field."""
    if ord < -1:
        raise ValueError("ord must be >= -1")
    if splitting == RAMIFIED:
        return 1
    if ord < 0:
        return 0
    if splitting == INERT:
        return (1 + (-1) ** ord) // 2
    if splitting == SPLIT:
        return 1 + ord
    raise ValueError(f"unknown splitting {splitting!r}")


def reflex_local_data(p: int, T: TMatrix) -> tuple[ReflexLocalData, ...]:
    """Splitting data for every prime l dividing (Dtilde - n**2)/(4D).

    The chosen prime above l carries valuation t_l for l != p and t_p - 1
    for l = p (the partner prime is chosen to carry none).
    """
    cm = T.cm
    out = []
    for l in prime_factors(T.quarter_det):
        # l | Dtilde - n**2 with l coprime to n forces split or ramified.
        assert kronecker_symbol(cm.dtilde, l) != -1, "inert prime below a divisor"
        in_ftilde = RAMIFIED if cm.dtilde % l == 0 else SPLIT
        t_l = padic_valuation(T.quarter_det, l)
        out.append(
            ReflexLocalData(
                l=l,
                splitting_in_Ftilde=in_ftilde,
                splitting_in_Ktilde=split_in_Ktilde(T, l),
                ord_at_chosen_prime=t_l - 1 if l == p else t_l,
            )
        )
    return tuple(out)


def b1_at_p(cm: CmFieldData, p: int) -> int:
    """The reflex-side count b1(p), computed independently of beta_l.

    Vanishes per (n, mu) whenever the chosen prime above p splits in the
    reflex CM field; otherwise it is the product of rho-factors over the
    primes dividing (Dtilde - n**2)/(4D).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    for n, t_p, mus in _terms_at_p(cm, p):
        for mu in mus:
            T = build_tmatrix(cm, n, mu)
            data = reflex_local_data(p, T)
            at_p = next(d for d in data if d.l == p)
            if at_p.splitting_in_Ktilde == SPLIT:
                continue
            prod = 1
            for d in data:
                prod *= rho_local(d.splitting_in_Ktilde, d.ord_at_chosen_prime)
                if prod == 0:
                    break
            total += (t_p + 1) * prod
    return total


def verify_main_identity(cm: CmFieldData) -> bool:
    """b1(p) = 2 * (intersection at p) over every prime p <= Dtilde/(4D)."""
    bound = cm.dtilde // (4 * cm.D)
    return all(
        b1_at_p(cm, p) == 2 * intersection_at_p(cm, p) for p in primes_up_to(bound)
    )
