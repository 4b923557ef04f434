import itertools
from decimal import Decimal
from fractions import Fraction

import pytest

from latforge import (
    Basis,
    BoxTooLargeError,
    DependentRowsError,
    gram_det,
    gso,
    hnf,
    lll_reduce,
    metrics,
    same_lattice,
    svp_oracle,
    uniform_basis,
)
from latforge.core import _enumerate_box_numpy, _enumerate_box_python, _hnf_echelon
from latforge.parallel import derive_rng

from helpers import lattice_contains, same_lattice_oracle


class TestBasis:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            Basis(((1, 2), (3,)))
        with pytest.raises(ValueError):
            Basis(())
        with pytest.raises(ValueError):
            Basis(((1,), (2,)))  # rank above dimension

    def test_identity(self):
        b = Basis.identity(3)
        assert b.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert (b.m, b.n) == (3, 3)


class TestGso:
    def test_identity_is_orthonormal(self):
        g = gso(Basis.identity(3))
        assert g.ortho == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert all(c == 0 for row in g.mu for c in row)

    def test_projection_example(self):
        # mu21 = <(4,5),(3,0)> / 9 = 4/3 and b*2 = (4,5) - (4/3)(3,0) = (0,5)
        g = gso(Basis(((3, 0), (4, 5))))
        assert g.mu[1][0] == Fraction(4, 3)
        assert g.ortho[1] == (0, 5)
        assert g.normsq == (9, 25)

    def test_dependent_rows(self):
        with pytest.raises(DependentRowsError):
            gso(Basis(((1, 1), (2, 2))))

    def test_reconstruction_identity(self):
        for seed in range(5):
            b = uniform_basis(6, -50, 50, seed=seed)
            g = gso(b)
            for i, row in enumerate(b.rows):
                rebuilt = list(g.ortho[i])
                for j in range(i):
                    rebuilt = [
                        r + g.mu[i][j] * o for r, o in zip(rebuilt, g.ortho[j])
                    ]
                assert all(r == x for r, x in zip(rebuilt, row))

    def test_pairwise_orthogonality_exact(self):
        g = gso(uniform_basis(5, -9, 9, seed=3))
        for i in range(5):
            for j in range(i):
                assert sum(a * b for a, b in zip(g.ortho[i], g.ortho[j])) == 0


class TestMetrics:
    def test_identity(self):
        m = metrics(Basis.identity(4))
        assert (m.shortest, m.longest) == (1, 1)
        assert m.log10_weight == 0
        assert m.det_lattice == 1

    def test_diagonal(self):
        m = metrics(Basis(((2, 0), (0, 3))))
        assert (m.shortest, m.longest) == (2, 3)
        assert m.det_lattice == 6

    def test_direct_norms(self):
        m = metrics(Basis(((3, 4), (0, 1))))
        assert (m.shortest, m.longest) == (1, 5)

    def test_det_squares_to_gram_det(self):
        for seed in range(5):
            b = uniform_basis(6, -999, 999, seed=seed)
            m = metrics(b)
            rel = abs(m.det_lattice * m.det_lattice - gram_det(b)) / gram_det(b)
            assert rel < Decimal("1e-12")

    def test_huge_entries_do_not_overflow(self):
        b = Basis(((10**900, 0), (0, 10**900)))
        m = metrics(b)
        assert m.shortest == Decimal(10) ** 900
        assert abs(m.log10_weight - 1800) < Decimal("1e-30")

    def test_det_invariant_under_unimodular_transform(self):
        b = uniform_basis(5, -99, 99, seed=8)
        rows = [list(r) for r in b.rows]
        rows[2] = [x - 7 * y for x, y in zip(rows[2], rows[0])]
        rows[0], rows[4] = rows[4], rows[0]
        assert metrics(Basis.from_rows(rows)).det_lattice == metrics(b).det_lattice


class TestGramDet:
    def test_identity(self):
        assert gram_det(Basis.identity(5)) == 1

    def test_diagonal(self):
        assert gram_det(Basis(((2, 0), (0, 3)))) == 36

    def test_row_permutation_invariance(self):
        rng = derive_rng("gram-perm")
        for seed in range(5):
            b = uniform_basis(5, -20, 20, seed=seed)
            rows = list(b.rows)
            rng.shuffle(rows)
            assert gram_det(Basis(tuple(rows))) == gram_det(b)

    def test_rectangular(self):
        assert gram_det(Basis(((1, 0, 0), (0, 2, 0)))) == 4


class TestHnf:
    def test_identity(self):
        assert hnf(Basis.identity(4)) == Basis.identity(4)

    def test_small_example(self):
        got = hnf(Basis(((1, -1), (0, 2))))
        assert got.rows == ((1, 1), (0, 2))
        # independent route: same lattice, canonical shape
        assert same_lattice_oracle(got, Basis(((1, -1), (0, 2))))

    def test_idempotent(self):
        for seed in range(6):
            b = uniform_basis(5, -30, 30, seed=seed)
            h = hnf(b)
            assert hnf(h) == h

    def test_canonical_under_unimodular_changes(self):
        b = uniform_basis(5, -30, 30, seed=1)
        rows = [list(r) for r in b.rows]
        rows[0] = [x + 3 * y for x, y in zip(rows[0], rows[2])]
        rows[3], rows[4] = rows[4], rows[3]
        rows[1] = [-x for x in rows[1]]
        other = Basis.from_rows(rows)
        assert hnf(other) == hnf(b)
        assert same_lattice(other, b)
        assert same_lattice_oracle(other, b)

    def test_fast_path_matches_echelon(self):
        rng = derive_rng("hnf-agree")
        checked = 0
        while checked < 40:
            m = rng.randint(6, 9)
            rows = [[rng.randint(-99, 99) for _ in range(m)] for _ in range(m)]
            b = Basis.from_rows(rows)
            if gram_det(b) == 0:
                continue
            checked += 1
            assert hnf(b).rows == tuple(
                tuple(r) for r in _hnf_echelon([list(r) for r in rows])
            )

    def test_detects_dependence(self):
        with pytest.raises(DependentRowsError):
            hnf(Basis(((1, 2), (2, 4))))

    def test_shape_contract(self):
        for seed in range(4):
            h = hnf(uniform_basis(6, -99, 99, seed=seed))
            pivots = []
            for row in h.rows:
                j = next(i for i, x in enumerate(row) if x != 0)
                assert row[j] > 0
                pivots.append(j)
            assert pivots == sorted(pivots)
            for i, j in enumerate(pivots):
                for k in range(i):
                    assert 0 <= h.rows[k][j] < h.rows[i][j]


class TestSvpOracle:
    def test_identity(self):
        res = svp_oracle(Basis.identity(3), 2)
        assert res.lambda1 == 1
        assert res.count_checked == 5**3 - 1

    def test_small_lattice_ground_truth(self):
        b = Basis(((2, 0), (1, 2)))
        res = svp_oracle(b, 3)
        assert res.lambda1 == 2
        # cross-check: wider box finds nothing shorter
        wide = svp_oracle(b, 6)
        assert wide.lambda1 == res.lambda1
        assert res.vector == (-2, 0)  # lex-smallest coefficients (-1, 0)

    def test_box_budget(self):
        with pytest.raises(BoxTooLargeError):
            svp_oracle(Basis.identity(5), 3, budget=1000)

    def test_result_in_lattice(self):
        b = uniform_basis(4, -9, 9, seed=2)
        res = svp_oracle(b, 3)
        assert lattice_contains(b, res.vector)
        assert res.vector != (0,) * b.n

    def test_numpy_and_python_paths_agree(self):
        for seed in range(4):
            b = uniform_basis(3, -15, 15, seed=seed)
            assert _enumerate_box_numpy(b, 4) == _enumerate_box_python(b, 4)

    def test_not_longer_than_reduced_rows(self):
        for seed in range(4):
            b = uniform_basis(4, -30, 30, seed=seed)
            res = svp_oracle(b, 6)
            red = lll_reduce(b)
            lam_sq = sum(x * x for x in res.vector)
            assert all(lam_sq <= red.row_normsq(i) for i in range(red.m))

    def test_brute_force_cross_check(self):
        # independent re-enumeration with itertools over the same box
        b = Basis(((3, 1), (1, 4)))
        res = svp_oracle(b, 4)
        best = min(
            (
                sum(
                    (c0 * b.rows[0][j] + c1 * b.rows[1][j]) ** 2
                    for j in range(2)
                )
                for c0, c1 in itertools.product(range(-4, 5), repeat=2)
                if (c0, c1) != (0, 0)
            )
        )
        assert res.lambda1 * res.lambda1 == best
