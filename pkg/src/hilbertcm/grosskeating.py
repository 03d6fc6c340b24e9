"""Gross-Keating invariants, the local index formula, and the local
representation-density formula for the two ternary shapes this project
produces.

General Gross-Keating reduction (arbitrary half-integral forms over Z_2) is
deliberately out of scope: only the two classified shapes below ever occur
here, and their invariants are immediate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import hilbert_symbol, is_prime, padic_valuation


@dataclass(frozen=True)
class GkData:
    """Sorted invariants (a0, a1, a2) with an optional epsilon sign.

    epsilon is defined only when the isotropy-relevant classification
    applies; l records the prime the data was computed at, when known.
    """

    a0: int
    a1: int
    a2: int
    epsilon: int | None = None
    l: int | None = None

    def __post_init__(self) -> None:
        if not (0 <= self.a0 <= self.a1 <= self.a2):
            raise ValueError(f"invariants must satisfy 0 <= a0 <= a1 <= a2, got {self}")
        if self.epsilon not in (None, -1, 1):
            raise ValueError("epsilon must be -1, +1, or undefined")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.a0, self.a1, self.a2)


@dataclass(frozen=True)
class OddDiagShape:
    """diag(1, alpha, alpha**-1 * det) over Z_l for odd l, with alpha a unit."""

    alpha: int
    det: int


@dataclass(frozen=True)
class TwoAdicShape:
    """diag(unit * 2**t0, [[A, 1/2], [1/2, A]]) over Z_2, with A in {0, 1}."""

    t0: int
    A: int


def gk_invariants(shape: OddDiagShape | TwoAdicShape, l: int) -> GkData:
    """Invariants and epsilon sign of a supported classified shape.

    * odd l, diag(1, alpha, alpha**-1 d):  (0, 0, ord_l d), epsilon = (-alpha, l)_l;
    * l = 2, diag(unit*2**t0, [[A,1/2],[1/2,A]]):  (0, 0, t0), epsilon = +1 for
      A = 0 and -1 for A = 1.
    """
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    if isinstance(shape, OddDiagShape):
        if l == 2:
            raise ValueError("OddDiagShape requires an odd prime")
        if shape.alpha % l == 0:
            raise ValueError(f"alpha = {shape.alpha} is not a unit at {l}")
        if shape.det == 0:
            raise ValueError("det must be nonzero")
        t = padic_valuation(shape.det, l)
        return GkData(0, 0, t, epsilon=hilbert_symbol(-shape.alpha, l, l), l=l)
    if isinstance(shape, TwoAdicShape):
        if l != 2:
            raise ValueError("TwoAdicShape is a 2-adic classification")
        if shape.A not in (0, 1):
            raise ValueError(f"A must be 0 or 1, got {shape.A}")
        if shape.t0 < 0:
            raise ValueError("t0 must be nonnegative")
        return GkData(0, 0, shape.t0, epsilon=1 if shape.A == 0 else -1, l=2)
    raise ValueError(f"unsupported shape {shape!r}; general reduction is out of scope")


def gk_index(inv: GkData, p: int) -> Fraction:
    """Local intersection index attached to invariants (a0, a1, a2) at p.

    Two cases on the parity of a1 - a0; the even case carries the extra
    half-weighted top term, so the result lies in (1/2)*Z.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a0, a1, a2 = inv.triple
    total = Fraction(
        sum((i + 1) * (a0 + a1 + a2 - 3 * i) * p**i for i in range(a0))
    )
    if (a1 - a0) % 2 == 0:
        total += sum(
            (a0 + 1) * (2 * a0 + a1 + a2 - 4 * i) * p**i
            for i in range(a0, (a0 + a1 - 2) // 2 + 1)
        )
        total += Fraction(a0 + 1, 2) * (a2 - a1 + 1) * p ** ((a0 + a1) // 2)
    else:
        total += sum(
            (a0 + 1) * (2 * a0 + a1 + a2 - 4 * i) * p**i
            for i in range(a0, (a0 + a1 - 1) // 2 + 1)
        )
    return total


def gk_density(inv: GkData, epsilon: int, l: int) -> int:
    """Local representation density for isotropic invariants (a0, a1, a2).

    The caller is responsible for the isotropy gate (see is_isotropic); an
    anisotropic form has density 0 and must not reach this formula.
    """
    if epsilon not in (-1, 1):
        raise ValueError("epsilon must be +-1")
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    a0, a1, a2 = inv.triple
    total = 2 * sum((i + 1) * l**i for i in range(a0))
    if (a0 - a1) % 2 == 0:
        total += 2 * sum((i + 1) * l**i for i in range(a0, (a0 + a1 - 2) // 2 + 1))
        if epsilon == 1:
            total += (a0 + 1) * (a2 - a1 + 1) * l ** ((a0 + a1) // 2)
        else:
            total += (a0 + 1) * l ** ((a0 + a1) // 2)
    else:
        total += 2 * sum((i + 1) * l**i for i in range(a0, (a0 + a1 - 1) // 2 + 1))
    return total


def is_isotropic(alpha: int, t: int, l: int) -> bool:
    """Isotropy test for the ternary form with unit alpha and ord t at l:
    isotropic iff (-alpha, l)_l ** t = 1."""
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    if alpha % l == 0:
        raise ValueError(f"alpha = {alpha} must be a unit at {l}")
    if t < 0:
        raise ValueError("t must be nonnegative")
    return hilbert_symbol(-alpha, l, l) ** t == 1
