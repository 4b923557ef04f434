"""Lattice diffusion and sublattice fusion.

One inner iteration shuffles the rows, cuts them into disjoint blocks,
reduces every block independently (the worker-pool boundary), concatenates
the reduced blocks and rearranges the result with a fresh right permutation.
The outer loop drops the block count by one each pass, so blocks grow until
the reduction is effectively whole-basis.  Sigma wraps the whole run in a
best-of-n sample of starting permutations.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, replace
from decimal import Decimal

from .core import Basis, BasisMetrics, metrics, reduction_key, _sqrt
from .errors import BadBlockingError, DegreeMismatchError
from .lll import LllParams, lll_reduce
from .parallel import derive_rng, derive_seed, pmap
from .perm import Permutation, apply, sample_right


@dataclass(frozen=True)
class LdsfConfig:
    """Block count (= worker count), block size, loop depths, stop bound."""

    servers: int
    block_rows: int = 2
    inner_iters: int = 1
    outer_iters: int = 1
    alpha: LllParams = LllParams("3/4")
    target_bound: float | Decimal | None = None
    seed: int = 0

    def __post_init__(self):
        if self.servers < 1:
            raise ValueError("servers must be >= 1")
        if self.block_rows < 2:
            raise ValueError("block_rows must be >= 2")
        if self.inner_iters < 1 or self.outer_iters < 1:
            raise ValueError("inner_iters and outer_iters must be >= 1")


@dataclass(frozen=True)
class LdsfRound:
    outer: int
    inner: int
    block_metrics: tuple[BasisMetrics, ...]
    fused_metrics: BasisMetrics
    fused_basis: Basis
    permutation: Permutation


@dataclass(frozen=True)
class LdsfTrace:
    rounds: tuple[LdsfRound, ...]
    best_vector_norm: Decimal
    best_basis: Basis
    final_basis: Basis
    reached_target: bool
    seconds: float


def block_sizes(m: int, k: int, beta: int) -> list[int]:
    """Sizes of k blocks covering m rows, each of size >= 2.

    The first k-1 blocks get beta rows and the last absorbs the remainder;
    when that leaves the last block short, fall back to an even split.
    """
    if k < 1:
        raise BadBlockingError("need at least one block")
    if beta < 2:
        raise BadBlockingError("block size must be >= 2")
    if k == 1:
        return [m]
    last = m - (k - 1) * beta
    if last >= 2:
        return [beta] * (k - 1) + [last]
    base, rem = divmod(m, k)
    if base < 2:
        raise BadBlockingError(
            f"cannot cover {m} rows with {k} blocks of size >= 2"
        )
    return [base + 1] * rem + [base] * (k - rem)


def diffuse(b: Basis, k: int, beta: int, rng: random.Random) -> list[Basis]:
    """Random disjoint partition of the rows into k blocks of about beta rows.

    Every row lands in exactly one block, so the union of the blocks spans
    the original lattice and each block is itself a basis.
    """
    sizes = block_sizes(b.m, k, beta)
    order = list(range(b.m))
    rng.shuffle(order)
    blocks = []
    at = 0
    for size in sizes:
        blocks.append(Basis(tuple(b.rows[i] for i in order[at : at + size])))
        at += size
    return blocks


def fuse(blocks: list[Basis], p: Permutation) -> Basis:
    """Concatenate blocks in order, then rearrange rows by p."""
    rows = tuple(row for blk in blocks for row in blk.rows)
    if p.degree != len(rows):
        raise DegreeMismatchError(
            f"permutation degree {p.degree} != fused row count {len(rows)}"
        )
    return apply(Basis(rows), p)


def ldsf_run(b: Basis, cfg: LdsfConfig) -> LdsfTrace:
    """Diffuse / reduce / fuse for M inner iterations per outer pass.

    Each outer pass drops the block count by one (floored at 1) and rebinds
    the block size to ceil(m / k).  Stops after an outer pass whose best
    fused shortest vector meets ``target_bound``.  All randomness is derived
    from (seed, outer, inner), so traces replay identically at any pool size.
    """
    started = time.perf_counter()
    m = b.m
    k = cfg.servers
    current = b
    rounds: list[LdsfRound] = []
    best_sq: int | None = None
    best_basis = b
    reached = False
    for outer in range(1, cfg.outer_iters + 1):
        beta = math.ceil(m / k)
        for inner in range(1, cfg.inner_iters + 1):
            blocks = diffuse(
                current, k, beta, derive_rng(cfg.seed, "ldsf", outer, inner, "cut")
            )
            reduced = pmap(lambda blk: lll_reduce(blk, cfg.alpha), blocks)
            pi = sample_right(m, derive_rng(cfg.seed, "ldsf", outer, inner, "mix"))
            current = fuse(reduced, pi)
            fused_min_sq = min(current.row_normsq(i) for i in range(m))
            if best_sq is None or fused_min_sq < best_sq:
                best_sq, best_basis = fused_min_sq, current
            rounds.append(
                LdsfRound(
                    outer=outer,
                    inner=inner,
                    block_metrics=tuple(metrics(blk) for blk in reduced),
                    fused_metrics=metrics(current),
                    fused_basis=current,
                    permutation=pi,
                )
            )
        if cfg.target_bound is not None and _sqrt(best_sq) <= (
            cfg.target_bound
            if isinstance(cfg.target_bound, Decimal)
            else Decimal(str(cfg.target_bound))
        ):
            reached = True
            break
        k = max(1, k - 1)
    return LdsfTrace(
        rounds=tuple(rounds),
        best_vector_norm=_sqrt(best_sq),
        best_basis=best_basis,
        final_basis=current,
        reached_target=reached,
        seconds=time.perf_counter() - started,
    )


def sigma_candidates(
    m_blocks: int, n_perms: int, b: Basis, cfg: LdsfConfig, rng: random.Random
) -> list[tuple[Permutation, LdsfTrace]]:
    """The n permuted LDSF runs underlying ``sigma``, in sample order."""
    if n_perms < 1:
        raise ValueError("n_perms must be >= 1")
    out = []
    for i in range(n_perms):
        pi = sample_right(b.m, rng)
        run_cfg = replace(cfg, servers=m_blocks, seed=derive_seed(cfg.seed, "sigma", i))
        out.append((pi, ldsf_run(apply(b, pi), run_cfg)))
    return out


def sigma(
    m_blocks: int, n_perms: int, b: Basis, cfg: LdsfConfig, rng: random.Random
) -> Basis:
    """Best final basis of LDSF over n sampled right permutations of b."""
    candidates = sigma_candidates(m_blocks, n_perms, b, cfg, rng)
    _, best = min(candidates, key=lambda c: reduction_key(c[1].final_basis))
    return best.final_basis
