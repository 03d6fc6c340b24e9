"""The positive definite 2x2 matrices attached to an admissible parameter n.

For a validated field and each n with 0 < n < sqrt(Dtilde) and
(Dtilde - n**2)/(4D) a positive integer, there is (per sign mu) a unique
integral matrix T = [[a, b], [b, c]] with

    det T = (Dtilde - n**2)/D,
    delta = (2*mu*n - D*c - (2b + D*c)*sqrt(D))/2,
    a + D*b + ((D**2 - D)/4)*c = -mu*n.

Its structural facts drive every local computation downstream: 4 | det,
exactly one of a, c is 0 mod 4 and the other is -1 mod 4, and no prime
dividing det divides both a and c.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .exactnum import prime_factors
from .quadcm import CmFieldData


class TMatrixError(ValueError):
    """Raised for a non-admissible (n, mu) request."""


@dataclass(frozen=True)
class TMatrix:
    cm: CmFieldData
    n: int
    mu: int
    a: int
    b: int
    c: int

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.b

    @property
    def quarter_det(self) -> int:
        """The positive integer (Dtilde - n**2)/(4D) = det/4."""
        return self.det // 4

    def entries(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def mu_signs(cm: CmFieldData, n: int) -> tuple[int, ...]:
    """The admissible signs for n: both when D | n, else the single mu with
    D | (u - 2*mu*n)."""
    D = cm.D
    if n % D == 0:
        return (1, -1)
    if (cm.u - 2 * n) % D == 0:
        return (1,)
    if (cm.u + 2 * n) % D != 0:
        # u**2 = 4*n**2 mod D whenever n is admissible, so one sign must fit.
        raise TMatrixError(f"no sign works for n = {n}; is n admissible?")
    return (-1,)


def admissible_n(cm: CmFieldData) -> list[tuple[int, tuple[int, ...]]]:
    """All (n, mu-list) with 0 < n < sqrt(Dtilde) and 4D | (Dtilde - n**2),
    ascending in n."""
    out: list[tuple[int, tuple[int, ...]]] = []
    step = 4 * cm.D
    for n in range(1, isqrt(cm.dtilde) + 1):
        if (cm.dtilde - n * n) % step == 0:
            out.append((n, mu_signs(cm, n)))
    return out


def build_tmatrix(cm: CmFieldData, n: int, mu: int) -> TMatrix:
    """Construct T(mu*n); raises TMatrixError when (n, mu) is not admissible."""
    if mu not in (1, -1):
        raise TMatrixError(f"mu must be +-1, got {mu}")
    D = cm.D
    rem = cm.dtilde - n * n
    if n <= 0 or rem <= 0 or rem % (4 * D):
        raise TMatrixError(
            f"n = {n} is not admissible: (Dtilde - n**2)/(4D) is not a positive integer"
        )
    c_num = 2 * mu * n - cm.u
    if c_num % D:
        raise TMatrixError(f"c = {c_num}/{D} is not integral (wrong sign mu = {mu})")
    c = c_num // D
    if c <= 0:
        raise TMatrixError(f"c = {c} is not positive")
    b_num = -cm.v - D * c
    if b_num % 2:
        raise TMatrixError(f"b = {b_num}/2 is not integral")
    b = b_num // 2
    a = -mu * n - D * b - (D * D - D) // 4 * c
    det = a * c - b * b
    if det != rem // D:
        raise TMatrixError(
            f"determinant mismatch: got {det}, expected {rem // D}"
        )
    # Structural guarantees for validated fields.  Each diagonal entry is
    # 0 or -1 mod 4 (a = -w0**2, c = -w1**2 mod 4 up to a common shift), and
    # at least one is odd; both are -1 mod 4 exactly when w0 and w1 are both
    # odd, a w-class the validation admits (e.g. Q(zeta5)'s presentation).
    assert a > 0, "matrix must be positive definite"
    assert (a % 4, c % 4) in {(0, 3), (3, 0), (3, 3)}, "diagonal mod-4 pattern violated"
    for q in prime_factors(det):
        assert a % q or c % q, f"prime {q} divides both diagonal entries"
    return TMatrix(cm, n, mu, a, b, c)


def all_tmatrices(cm: CmFieldData) -> list[TMatrix]:
    """Every T(mu*n) of the field, ordered by (n, -mu)."""
    out = []
    for n, mus in admissible_n(cm):
        for mu in mus:
            out.append(build_tmatrix(cm, n, mu))
    return out
