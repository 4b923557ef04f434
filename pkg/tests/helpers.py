"""Shared test oracles, deliberately independent of the code they check.

``lattice_contains``/``same_lattice_oracle`` decide lattice membership and
equality by exact rational row reduction, so HNF-based claims in the library
can be validated through a second route.
"""

from __future__ import annotations

from fractions import Fraction

from latforge import Basis, gram_det


def solve_coefficients(b: Basis, v: tuple[int, ...]) -> list[Fraction] | None:
    """Rational x with x.B = v, or None when v is outside the row space."""
    gram = [
        [Fraction(sum(p * q for p, q in zip(r, s))) for s in b.rows] for r in b.rows
    ]
    rhs = [Fraction(sum(p * q for p, q in zip(row, v))) for row in b.rows]
    m = b.m
    # Gaussian elimination on the (always invertible) Gram matrix.
    for col in range(m):
        piv = next(i for i in range(col, m) if gram[i][col] != 0)
        gram[col], gram[piv] = gram[piv], gram[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / gram[col][col]
        gram[col] = [x * inv for x in gram[col]]
        rhs[col] *= inv
        for i in range(m):
            if i != col and gram[i][col] != 0:
                factor = gram[i][col]
                gram[i] = [x - factor * y for x, y in zip(gram[i], gram[col])]
                rhs[i] -= factor * rhs[col]
    x = rhs
    # Residual check: x.B must reproduce v exactly (v could be off-space).
    for j in range(b.n):
        if sum(x[i] * b.rows[i][j] for i in range(m)) != v[j]:
            return None
    return x


def lattice_contains(b: Basis, v: tuple[int, ...]) -> bool:
    x = solve_coefficients(b, v)
    return x is not None and all(c.denominator == 1 for c in x)


def same_lattice_oracle(a: Basis, b: Basis) -> bool:
    """Mutual row membership plus equal Gram determinants."""
    if a.n != b.n or a.m != b.m:
        return False
    if gram_det(a) != gram_det(b):
        return False
    return all(lattice_contains(b, row) for row in a.rows) and all(
        lattice_contains(a, row) for row in b.rows
    )
