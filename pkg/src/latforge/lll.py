"""Classic swap-based LLL reduction over exact integer arithmetic.

The working state keeps the Gram-Schmidt data in the all-integer form
d[i] = det(Gram(b_1..b_i)) and lam[i][j] = mu_ij * d[j+1], so every update
is an exact integer division and no rationals are materialized in the hot
loop.  The reduction parameter alpha is an exact Fraction; the Lovasz test
is a cross-multiplied integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Basis, gso
from .errors import DependentRowsError


@dataclass(frozen=True)
class LllParams:
    """Reduction parameter alpha, an exact rational in (1/4, 1).

    Strings such as "0.9999" or "9999/10000" are accepted and converted
    exactly; floats are rejected because their binary value is almost never
    the rational the caller meant.
    """

    alpha: Fraction

    def __post_init__(self):
        if isinstance(self.alpha, float):
            raise TypeError("pass alpha as a Fraction, string, or integer ratio")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not Fraction(1, 4) < self.alpha < 1:
            raise ValueError(f"alpha must lie in (1/4, 1), got {self.alpha}")


DEFAULT_PARAMS = LllParams(Fraction(3, 4))


def lll_reduce(b: Basis, params: LllParams = DEFAULT_PARAMS) -> Basis:
    """Swap-based LLL reduction of ``b``.

    The output generates the same lattice, is size-reduced (|mu_ij| <= 1/2)
    and satisfies the Lovasz condition with the exact rational alpha.
    Deterministic for a fixed input row order, and idempotent: reducing an
    already reduced basis performs no row operation at all.
    """
    m = b.m
    rows = [list(r) for r in b.rows]
    p, q = params.alpha.numerator, params.alpha.denominator

    # d[0] = 1, d[i+1] = det(Gram(rows[0..i])); lam[i][j] = mu_ij * d[j+1].
    d = [1] * (m + 1)
    lam = [[0] * m for _ in range(m)]

    def orthogonalize(k: int) -> None:
        for j in range(k + 1):
            u = sum(a * c for a, c in zip(rows[k], rows[j]))
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DependentRowsError(f"row {k} depends on rows above it")
                d[k + 1] = u

    def size_reduce(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            # nearest integer to mu_kl = lam[k][l] / d[l+1]
            r = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            rows[k] = [a - r * c for a, c in zip(rows[k], rows[l])]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        rows[k], rows[k - 1] = rows[k - 1], rows[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lam_k = lam[k][k - 1]
        new_d = (d[k - 1] * d[k + 1] + lam_k * lam_k) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lam_k * t) // d[k]
            lam[i][k - 1] = (new_d * t + lam_k * lam[i][k]) // d[k + 1]
        d[k] = new_d

    orthogonalize(0)
    kmax = 0
    k = 1
    while k < m:
        if k > kmax:
            kmax = k
            orthogonalize(k)
        size_reduce(k, k - 1)
        # Lovasz: d[k+1]/d[k] >= (p/q - lam^2/d[k]^2) * d[k]/d[k-1],
        # cross-multiplied by q * d[k] * d[k-1] > 0.
        lam_k = lam[k][k - 1]
        if q * (d[k - 1] * d[k + 1] + lam_k * lam_k) < p * d[k] * d[k]:
            swap(k, kmax)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return Basis.from_rows(rows)


def is_lll_reduced(b: Basis, params: LllParams = DEFAULT_PARAMS) -> bool:
    """Exact check of size reduction and the Lovasz condition."""
    g = gso(b)
    half = Fraction(1, 2)
    for i in range(1, b.m):
        if any(abs(c) > half for c in g.mu[i]):
            return False
        mu = g.mu[i][i - 1]
        if g.normsq[i] < (params.alpha - mu * mu) * g.normsq[i - 1]:
            return False
    return True
