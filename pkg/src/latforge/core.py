"""Exact-arithmetic lattice fundamentals.

Bases are immutable rows of arbitrary-precision integers.  Everything that
decides anything (orthogonality, lattice equality, tie-breaking) is computed
exactly over the integers or rationals; only the reported metrics pass
through a high-precision decimal conversion, because row norms of real
inputs can run to hundreds of digits and would overflow a float.
"""

from __future__ import annotations

import decimal
import itertools
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BoxTooLargeError, DependentRowsError

# 50 significant digits (~166 bits of mantissa) for all reported reals.
REAL = decimal.Context(prec=50)

#: Default cap on the number of coefficient vectors svp_oracle may enumerate.
DEFAULT_ENUM_BUDGET = 10_000_000


@dataclass(frozen=True)
class Basis:
    """Rank-m basis of a lattice in Z^n, stored as m rows of length n.

    Rows are assumed linearly independent over the rationals; operations
    that compute an orthogonalization raise :class:`DependentRowsError`
    when they are not.  Construction checks shape only.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("basis needs at least one row")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise ValueError("all rows must have the same length")
        if len(rows) > n:
            raise ValueError(f"rank {len(rows)} exceeds ambient dimension {n}")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row_normsq(self, i: int) -> int:
        return sum(x * x for x in self.rows[i])

    def max_abs_entry(self) -> int:
        return max(abs(x) for row in self.rows for x in row)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "Basis":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, m: int) -> "Basis":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)))


@dataclass(frozen=True)
class GsoData:
    """Gram-Schmidt orthogonalization with exact rational entries.

    ``ortho[i]`` is b*_i, ``mu[i][j]`` (j < i) the projection coefficient of
    row i onto b*_j, and ``normsq[i]`` = ||b*_i||^2.
    """

    ortho: tuple[tuple[Fraction, ...], ...]
    mu: tuple[tuple[Fraction, ...], ...]
    normsq: tuple[Fraction, ...]


@dataclass(frozen=True)
class BasisMetrics:
    """Reported lengths of a basis: shortest row, longest row, log10 of the
    product of row norms, and the lattice determinant sqrt(det(B.B^T))."""

    shortest: Decimal
    longest: Decimal
    log10_weight: Decimal
    det_lattice: Decimal


@dataclass(frozen=True)
class SvpResult:
    """Outcome of exhaustive shortest-vector enumeration."""

    vector: tuple[int, ...]
    lambda1: Decimal
    count_checked: int


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def gso(b: Basis) -> GsoData:
    """Exact rational Gram-Schmidt of the rows of ``b``.

    Raises DependentRowsError as soon as some b*_i collapses to zero.
    """
    ortho: list[tuple[Fraction, ...]] = []
    mu: list[tuple[Fraction, ...]] = []
    normsq: list[Fraction] = []
    for i, row in enumerate(b.rows):
        vec = [Fraction(x) for x in row]
        coeffs = []
        for j in range(i):
            c = _dot(row, ortho[j]) / normsq[j]
            coeffs.append(c)
            vec = [v - c * o for v, o in zip(vec, ortho[j])]
        nsq = _dot(vec, vec)
        if nsq == 0:
            raise DependentRowsError(f"row {i} depends on rows above it")
        ortho.append(tuple(vec))
        mu.append(tuple(coeffs))
        normsq.append(nsq)
    return GsoData(tuple(ortho), tuple(mu), tuple(normsq))


def _sqrt(value: int | Fraction) -> Decimal:
    if isinstance(value, Fraction):
        d = REAL.divide(Decimal(value.numerator), Decimal(value.denominator))
    else:
        d = Decimal(value)
    return REAL.sqrt(d)


def _log10(value: int) -> Decimal:
    return REAL.log10(Decimal(value))


def metrics(b: Basis) -> BasisMetrics:
    """Shortest/longest row norms, log10 of the norm product, lattice det."""
    normsqs = [b.row_normsq(i) for i in range(b.m)]
    log10_weight = REAL.divide(
        sum((_log10(nsq) for nsq in normsqs), Decimal(0)), Decimal(2)
    )
    return BasisMetrics(
        shortest=_sqrt(min(normsqs)),
        longest=_sqrt(max(normsqs)),
        log10_weight=log10_weight,
        det_lattice=_sqrt(gram_det(b)),
    )


def reduction_key(b: Basis) -> tuple[int, int, int]:
    """Exact comparison key ordering bases by reduction quality.

    Ascending lexicographic (shortest, weight, longest), computed on squared
    norms so ties never hinge on real rounding: the middle component is the
    product of squared row norms, which orders identically to log10-weight.
    """
    normsqs = [b.row_normsq(i) for i in range(b.m)]
    prod = 1
    for nsq in normsqs:
        prod *= nsq
    return (min(normsqs), prod, max(normsqs))


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    m = [row[:] for row in mat]
    size = len(m)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def gram_det(b: Basis) -> int:
    """det(B.B^T), exactly.  Zero iff the rows are dependent."""
    gram = [[_dot(r, s) for s in b.rows] for r in b.rows]
    return _bareiss_det(gram)


def is_independent(b: Basis) -> bool:
    return gram_det(b) != 0


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Returns (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0 for b != 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _hnf_echelon(rows: list[list[int]]) -> list[list[int]]:
    """Reference row-style HNF by xgcd row elimination.  Exact everywhere,
    but intermediate entries can blow up on large square inputs."""
    m, n = len(rows), len(rows[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, m):
            if rows[i][c] == 0:
                continue
            a, bb = rows[r][c], rows[i][c]
            x, y, g = _xgcd(a, bb)
            u, v = -(bb // g), a // g
            rows[r], rows[i] = (
                [x * p + y * q for p, q in zip(rows[r], rows[i])],
                [u * p + v * q for p, q in zip(rows[r], rows[i])],
            )
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        pivot = rows[r][c]
        for i in range(r):
            q = rows[i][c] // pivot
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    if r < m:
        raise DependentRowsError("rows span a lattice of lower rank")
    return rows


def _hnf_square_mod_det(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF of a square basis with all arithmetic bounded by the
    determinant (sympy's modulo-D algorithm, rotated into row convention)."""
    det = abs(_bareiss_det(rows))
    if det == 0:
        raise DependentRowsError("rows span a lattice of lower rank")
    m = len(rows)
    if det == 1:
        return [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    # Our row-style form H = U.B transposes to a lower-triangular column
    # form; rotating by 180 degrees maps it onto sympy's upper-triangular
    # column convention, and canonicity makes the round trip exact.
    rotated = Matrix(
        [[rows[m - 1 - j][m - 1 - i] for j in range(m)] for i in range(m)]
    )
    w = hermite_normal_form(rotated, D=det, check_rank=True)
    return [[int(w[m - 1 - j, m - 1 - i]) for j in range(m)] for i in range(m)]


# Below this rank the reference echelon beats the sympy import anyway.
_HNF_FAST_PATH_MIN_RANK = 6


def hnf(b: Basis) -> Basis:
    """Row-style Hermite normal form of the lattice spanned by ``b``.

    Upper-staircase profile with positive pivots and the entries above each
    pivot reduced into [0, pivot).  All row operations are unimodular, so the
    output generates the same lattice, and the form is canonical: two bases
    generate equal lattices iff their HNFs are identical.
    """
    rows = [list(r) for r in b.rows]
    if b.m == b.n and b.m >= _HNF_FAST_PATH_MIN_RANK:
        return Basis.from_rows(_hnf_square_mod_det(rows))
    return Basis.from_rows(_hnf_echelon(rows))


def same_lattice(a: Basis, b: Basis) -> bool:
    """Exact lattice-equality test via canonical HNF comparison."""
    return hnf(a).rows == hnf(b).rows


def _enumerate_box_python(b: Basis, bound: int) -> tuple[tuple[int, ...], int]:
    """Reference enumeration: first (lex-smallest) coefficient vector of
    minimal nonzero norm.  Arbitrary-precision, no numpy."""
    gram = [[_dot(r, s) for s in b.rows] for r in b.rows]
    best_sq = None
    best_coeffs = None
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=b.m):
        if not any(coeffs):
            continue
        sq = 0
        for i, ci in enumerate(coeffs):
            if ci == 0:
                continue
            gi = gram[i]
            sq += ci * ci * gi[i]
            for j in range(i + 1, b.m):
                if coeffs[j]:
                    sq += 2 * ci * coeffs[j] * gi[j]
        if best_sq is None or sq < best_sq:
            best_sq, best_coeffs = sq, coeffs
    return best_coeffs, best_sq


def _enumerate_box_numpy(b: Basis, bound: int) -> tuple[tuple[int, ...], int]:
    """Vectorized enumeration over the coefficient box, chunked to bound
    memory.  Index order equals lexicographic order on coefficient vectors,
    so the first minimum found is the lex-smallest one."""
    import numpy as np

    m = b.m
    side = 2 * bound + 1
    total = side**m
    gram = np.array([[_dot(r, s) for s in b.rows] for r in b.rows], dtype=np.int64)
    weights = np.array([side ** (m - 1 - j) for j in range(m)], dtype=np.int64)
    best_sq = None
    best_coeffs = None
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % side
        coeffs = digits - bound
        sq = np.einsum("ij,jk,ik->i", coeffs, gram, coeffs)
        sq[np.all(coeffs == 0, axis=1)] = np.iinfo(np.int64).max
        pos = int(np.argmin(sq))
        val = int(sq[pos])
        if best_sq is None or val < best_sq:
            best_sq = val
            best_coeffs = tuple(int(x) for x in coeffs[pos])
    return best_coeffs, best_sq


def svp_oracle(
    b: Basis, coeff_bound: int, budget: int = DEFAULT_ENUM_BUDGET
) -> SvpResult:
    """Exhaustive shortest-vector search over the coefficient box
    [-coeff_bound, coeff_bound]^m.

    Ground truth for desk-scale validation only; the box grows as
    (2*coeff_bound+1)^m and is rejected beyond ``budget``.  Ties are broken
    by the lexicographically smallest coefficient vector.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    box = (2 * coeff_bound + 1) ** b.m
    if box > budget:
        raise BoxTooLargeError(
            f"box of {box} coefficient vectors exceeds budget {budget}"
        )
    # int64 is safe as long as the worst-case quadratic form value fits.
    max_gram = max(abs(_dot(r, s)) for r in b.rows for s in b.rows)
    if max_gram and b.m**2 * coeff_bound**2 * max_gram < 2**62:
        coeffs, best_sq = _enumerate_box_numpy(b, coeff_bound)
    else:
        coeffs, best_sq = _enumerate_box_python(b, coeff_bound)
    vector = tuple(
        sum(c * row[j] for c, row in zip(coeffs, b.rows)) for j in range(b.n)
    )
    return SvpResult(vector=vector, lambda1=_sqrt(best_sq), count_checked=box - 1)
