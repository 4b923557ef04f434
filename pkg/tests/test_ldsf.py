from collections import Counter
from fractions import Fraction

import pytest

from latforge import (
    Basis,
    BadBlockingError,
    DegreeMismatchError,
    LdsfConfig,
    LllParams,
    Permutation,
    diffuse,
    fuse,
    hnf,
    knapsack_basis,
    ldsf_run,
    lll_reduce,
    metrics,
    sigma,
    uniform_basis,
)
from latforge import ldsf as ldsf_mod
from latforge.ldsf import block_sizes, sigma_candidates
from latforge.parallel import derive_rng, derive_seed
from latforge.serialize import ldsf_trace_dict

A34 = LllParams(Fraction(3, 4))


def cfg(servers, inner=1, outer=1, seed=0, target=None):
    return LdsfConfig(
        servers=servers,
        inner_iters=inner,
        outer_iters=outer,
        alpha=A34,
        target_bound=target,
        seed=seed,
    )


class TestBlocking:
    def test_exact_partition(self):
        assert block_sizes(6, 3, 2) == [2, 2, 2]

    def test_last_absorbs_remainder(self):
        assert block_sizes(7, 3, 2) == [2, 2, 3]

    def test_single_block(self):
        assert block_sizes(6, 1, 6) == [6]

    def test_even_fallback_when_last_too_small(self):
        assert block_sizes(7, 3, 3) == [3, 2, 2]

    def test_infeasible(self):
        with pytest.raises(BadBlockingError):
            block_sizes(5, 3, 2)
        with pytest.raises(BadBlockingError):
            block_sizes(6, 3, 1)

    def test_diffuse_partitions_rows(self):
        b = uniform_basis(7, -9, 9, seed=1)
        blocks = diffuse(b, 3, 2, derive_rng("cut"))
        assert [blk.m for blk in blocks] == [2, 2, 3]
        scattered = Counter(row for blk in blocks for row in blk.rows)
        assert scattered == Counter(b.rows)

    def test_diffuse_whole_basis(self):
        b = uniform_basis(6, -9, 9, seed=2)
        (block,) = diffuse(b, 1, 6, derive_rng("one"))
        assert Counter(block.rows) == Counter(b.rows)


class TestFuse:
    def test_single_block_identity_perm(self):
        b = uniform_basis(5, -9, 9, seed=3)
        assert fuse([b], Permutation.identity(5)) == b

    def test_partition_roundtrip_same_lattice(self):
        b = uniform_basis(6, -99, 99, seed=4)
        blocks = diffuse(b, 2, 3, derive_rng("f"))
        fused = fuse(blocks, Permutation.identity(6))
        assert hnf(fused) == hnf(b)

    def test_reversal(self):
        b = Basis(((1, 0), (0, 2)))
        assert fuse([b], Permutation((2, 1))).rows == ((0, 2), (1, 0))

    def test_degree_mismatch(self):
        b = uniform_basis(4, -9, 9, seed=5)
        with pytest.raises(DegreeMismatchError):
            fuse([b], Permutation.identity(5))


class TestRun:
    def test_single_block_matches_whole_reduction(self):
        b = uniform_basis(6, -99, 99, seed=6)
        trace = ldsf_run(b, cfg(servers=1, inner=2))
        assert trace.best_vector_norm <= metrics(lll_reduce(b, A34)).shortest

    def test_rounds_preserve_lattice(self):
        b = uniform_basis(12, -999, 999, seed=7)
        trace = ldsf_run(b, cfg(servers=3, inner=2, outer=2))
        h = hnf(b)
        assert all(hnf(r.fused_basis) == h for r in trace.rounds)
        assert hnf(trace.final_basis) == h

    def test_best_norm_is_running_min(self):
        b = uniform_basis(10, -999, 999, seed=8)
        trace = ldsf_run(b, cfg(servers=3, inner=2, outer=3))
        assert trace.best_vector_norm == min(
            r.fused_metrics.shortest for r in trace.rounds
        )

    def test_block_count_decrements_and_size_grows(self):
        b = uniform_basis(12, -99, 99, seed=9)
        trace = ldsf_run(b, cfg(servers=3, inner=1, outer=3))
        per_outer = {r.outer: len(r.block_metrics) for r in trace.rounds}
        assert per_outer == {1: 3, 2: 2, 3: 1}

    def test_entry_shrinkage_on_knapsack(self):
        b = knapsack_basis(12, bits=120, seed=10)
        trace = ldsf_run(b, cfg(servers=3, inner=2, outer=2))
        assert trace.final_basis.max_abs_entry() < b.max_abs_entry()

    def test_deterministic_across_pool_sizes(self, monkeypatch):
        b = uniform_basis(10, -999, 999, seed=11)
        monkeypatch.setenv("LATFORGE_THREADS", "1")
        serial = ldsf_trace_dict(ldsf_run(b, cfg(servers=3, inner=2, outer=2, seed=3)))
        monkeypatch.setenv("LATFORGE_THREADS", "8")
        threaded = ldsf_trace_dict(ldsf_run(b, cfg(servers=3, inner=2, outer=2, seed=3)))
        assert serial == threaded

    def test_target_stops_after_outer_pass(self):
        b = uniform_basis(8, -99, 99, seed=12)
        huge_target = float(metrics(b).longest) * 10
        trace = ldsf_run(b, cfg(servers=2, inner=1, outer=5, target=huge_target))
        assert trace.reached_target
        assert max(r.outer for r in trace.rounds) == 1

    def test_config_validation(self):
        with pytest.raises(ValueError):
            LdsfConfig(servers=0)
        with pytest.raises(ValueError):
            LdsfConfig(servers=1, block_rows=1)


class TestSigma:
    def test_identity_permutation_degenerates_to_plain_run(self, monkeypatch):
        b = uniform_basis(8, -99, 99, seed=13)
        monkeypatch.setattr(
            ldsf_mod, "sample_right", lambda m, rng: Permutation.identity(m)
        )
        base = cfg(servers=2, inner=2, seed=21)
        got = sigma(2, 1, b, base, derive_rng("sig"))
        expect = ldsf_run(
            b, LdsfConfig(servers=2, inner_iters=2, alpha=A34, seed=derive_seed(21, "sigma", 0))
        ).final_basis
        assert got == expect

    def test_lattice_preserved(self):
        b = uniform_basis(9, -99, 99, seed=14)
        out = sigma(3, 3, b, cfg(servers=3, seed=5), derive_rng("sig2"))
        assert hnf(out) == hnf(b)

    def test_best_of_sample_selection(self):
        b = uniform_basis(9, -999, 999, seed=15)
        base = cfg(servers=3, inner=2, seed=6)
        candidates = sigma_candidates(3, 5, b, base, derive_rng("sig3"))
        best = sigma(3, 5, b, base, derive_rng("sig3"))
        best_short = metrics(best).shortest
        assert best_short == min(
            metrics(t.final_basis).shortest for _, t in candidates
        )
