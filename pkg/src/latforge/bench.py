"""Sensitivity experiments: reduce many permuted copies of one basis and
tabulate what happens to the shortest vector."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Sequence

from .core import REAL, Basis, _sqrt
from .lll import LllParams, lll_reduce
from .parallel import derive_rng
from .perm import apply, sample_at_radius


@dataclass(frozen=True)
class SweepRow:
    radius: int
    min: Decimal
    max: Decimal
    mean: Decimal
    std: Decimal
    range: Decimal


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        lines = ["radius,min,max,mean,std,range"]
        for row in self.rows:
            lines.append(
                ",".join(
                    [
                        str(row.radius),
                        format_real(row.min),
                        format_real(row.max),
                        format_real(row.mean),
                        format_real(row.std),
                        format_real(row.range),
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def format_real(x: Decimal) -> str:
    """Fixed 12-significant-digit rendering; deterministic for a given value."""
    if x == 0:
        return "0"
    return f"{x:.12g}"


def summarize(radius: int, values: Sequence[Decimal]) -> SweepRow:
    """Min/max/mean/population-sigma/range of one sample of lengths."""
    lo, hi = min(values), max(values)
    if lo == hi:
        # mean inherits the shared value; sigma is 0 by definition, not by
        # cancellation at the 50th digit.
        return SweepRow(radius, lo, hi, lo, Decimal(0), Decimal(0))
    n = Decimal(len(values))
    mean = REAL.divide(sum(values, Decimal(0)), n)
    var = REAL.divide(
        sum((REAL.multiply(v - mean, v - mean) for v in values), Decimal(0)), n
    )
    return SweepRow(
        radius=radius,
        min=lo,
        max=hi,
        mean=mean,
        std=REAL.sqrt(var),
        range=hi - lo,
    )


def _shortest_sq_after(b: Basis, r: int, alpha: LllParams, seed: int, i: int) -> int:
    pi = sample_at_radius(b.m, r, derive_rng(seed, "sweep", r, i))
    reduced = lll_reduce(apply(b, pi), alpha)
    return min(reduced.row_normsq(j) for j in range(reduced.m))


def radius_sweep(
    b: Basis,
    radii: Iterable[int],
    n_samples: int,
    alpha: LllParams,
    seed: int = 0,
) -> SweepResult:
    """For each radius, reduce ``n_samples`` permuted copies of ``b`` and
    collect the distribution of the resulting shortest-vector lengths."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rows = []
    for r in radii:
        lengths = [
            _sqrt(_shortest_sq_after(b, r, alpha, seed, i)) for i in range(n_samples)
        ]
        rows.append(summarize(r, lengths))
    return SweepResult(rows=tuple(rows))


def improvement_frequency(
    b_star: Basis,
    radii: Iterable[int],
    n_samples: int,
    alpha: LllParams,
    seed: int = 0,
) -> dict[int, float]:
    """Fraction of permutations at each radius whose re-reduction yields a
    strictly shorter shortest vector than ``b_star`` already has.

    ``b_star`` is expected to be reduced already; the comparison is exact
    on squared norms.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    base_sq = min(b_star.row_normsq(j) for j in range(b_star.m))
    out = {}
    for r in radii:
        wins = sum(
            _shortest_sq_after(b_star, r, alpha, seed, i) < base_sq
            for i in range(n_samples)
        )
        out[r] = wins / n_samples
    return out


def normalize(values: Sequence) -> list[Decimal]:
    """Affine rescale onto [0, 1]; an all-equal input maps to all zeros."""
    if not values:
        raise ValueError("normalize needs at least one value")
    decs = [v if isinstance(v, Decimal) else Decimal(str(v)) for v in values]
    lo, hi = min(decs), max(decs)
    if lo == hi:
        return [Decimal(0)] * len(decs)
    span = hi - lo
    return [REAL.divide(v - lo, span) for v in decs]
