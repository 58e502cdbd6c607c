import numpy as np
import pytest

from orthoplex import (
    InputError,
    NotPSDError,
    SymMatrix,
    TolerancePolicy,
    det_structured,
    gram_embed,
    sym_eigen,
)


def structured_matrix(a, b):
    """Explicit matrix for the determinant oracle: a_i off the diagonal of
    row i, a_i + b_i on it."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    return np.tile(a[:, None], (1, a.size)) + np.diag(b)


class TestTolerancePolicy:
    def test_defaults(self):
        p = TolerancePolicy()
        assert p.rel == 1e-9 and p.abs == 1e-12 and p.rank_cut == 1e-10

    @pytest.mark.parametrize("bad", [0.0, -1e-9, 1.0, 2.0])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(InputError):
            TolerancePolicy(rel=bad)

    def test_isclose_scales_with_magnitude(self):
        p = TolerancePolicy()
        assert p.isclose(1e6, 1e6 * (1 + 1e-10))
        assert not p.isclose(1e6, 1e6 * (1 + 1e-8))
        # abs acts as a scale floor: threshold rel * abs near zero
        assert p.isclose(0.0, 1e-22)
        assert not p.isclose(0.0, 1e-13)


class TestSymMatrix:
    def test_symmetrizes_exactly(self):
        m = SymMatrix([[1.0, 2.0 + 1e-13], [2.0, 3.0]])
        assert np.array_equal(m.a, m.a.T)
        assert m.n == 2

    def test_rejects_asymmetric(self):
        with pytest.raises(InputError):
            SymMatrix([[1.0, 2.0], [5.0, 3.0]])

    def test_rejects_non_square_and_nan(self):
        with pytest.raises(InputError):
            SymMatrix([[1.0, 2.0, 3.0], [2.0, 1.0, 4.0]])
        with pytest.raises(InputError):
            SymMatrix([[np.nan, 0.0], [0.0, 1.0]])


class TestSymEigen:
    def test_identity(self):
        vals, vecs = sym_eigen(SymMatrix(np.eye(4)))
        assert np.allclose(vals, 1.0)
        assert np.allclose(vecs @ vecs.T, np.eye(4))

    def test_rank_one_all_ones(self):
        vals, _ = sym_eigen(SymMatrix(np.ones((3, 3))))
        assert np.allclose(sorted(vals, reverse=True), [3.0, 0.0, 0.0], atol=1e-12)

    def test_uniform_obtuseness_gram_form(self):
        # diagonal -2, off-diagonal 1: characteristic polynomial (l+3)^2 l
        g = np.ones((3, 3)) - 3 * np.eye(3)
        vals, _ = sym_eigen(SymMatrix(g))
        assert np.allclose(vals, [0.0, -3.0, -3.0], atol=1e-12)

    def test_residuals_on_random_matrices(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = rng.integers(2, 9)
            m = rng.normal(size=(n, n))
            m = (m + m.T) / 2
            vals, vecs = sym_eigen(SymMatrix(m))
            norm = np.linalg.norm(m, 2)
            for lam, v in zip(vals, vecs.T):
                assert np.linalg.norm(m @ v - lam * v) <= 1e-9 * norm
            assert np.all(np.diff(vals) <= 1e-12)  # descending


class TestDetStructured:
    def test_uniform_case(self):
        # b^{n-1} (b + n a) at a = b = 1, n = 3
        assert det_structured([1, 1, 1], [1, 1, 1]) == pytest.approx(4.0)

    def test_one_by_one(self):
        assert det_structured([5.0], [2.0]) == pytest.approx(7.0)

    def test_worked_three_by_three(self):
        # cofactor oracle on the explicit matrix
        a, b = (1.0, 2.0, 3.0), (4.0, 5.0, 6.0)
        oracle = np.linalg.det(structured_matrix(a, b))
        assert oracle == pytest.approx(258.0)
        assert det_structured(a, b) == pytest.approx(258.0, rel=1e-12)

    def test_total_on_zero_entries(self):
        # single zero: limit form keeps the matching product term
        a, b = (2.0, 3.0), (0.0, 5.0)
        oracle = np.linalg.det(structured_matrix(a, b))
        assert det_structured(a, b) == pytest.approx(oracle, rel=1e-12)
        # all-zero b: determinant of the rank-1 matrix is 0 for n >= 2
        assert det_structured([1.0, 2.0], [0.0, 0.0]) == pytest.approx(0.0)

    def test_against_lu_on_random_instances(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            a = rng.uniform(-2, 2, n)
            b = rng.uniform(-2, 2, n)
            oracle = float(np.linalg.det(structured_matrix(a, b)))
            got = det_structured(a, b)
            assert abs(got - oracle) <= 1e-9 * max(abs(oracle), 1e-6)

    def test_shape_mismatch(self):
        with pytest.raises(InputError):
            det_structured([1.0, 2.0], [1.0])


class TestGramEmbed:
    def test_identity_gives_orthonormal_points(self):
        pts = gram_embed(SymMatrix(np.eye(3)))
        assert pts.shape == (3, 3)
        assert np.allclose(pts @ pts.T, np.eye(3), atol=1e-12)

    def test_regular_triangle_gram(self):
        # R^2 = 1/3, pairwise inner product -R^2/2: unit side, rank 2
        r2 = 1.0 / 3.0
        g = np.full((3, 3), -r2 / 2) + np.diag([r2 * 1.5] * 3)
        pts = gram_embed(SymMatrix(g))
        assert pts.shape == (3, 2)
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.linalg.norm(pts[i] - pts[j]) == pytest.approx(1.0, rel=1e-12)

    def test_negated_uniform_gram_form(self):
        # diagonal 2, off-diagonal -1 embeds as an equilateral triangle,
        # squared side 2 + 2 - 2*(-1) = 6
        g = 2 * np.eye(3) - (np.ones((3, 3)) - np.eye(3))
        pts = gram_embed(SymMatrix(g))
        assert pts.shape == (3, 2)
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.sum((pts[i] - pts[j]) ** 2) == pytest.approx(6.0, rel=1e-12)

    def test_reconstruction_on_random_psd(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            n = int(rng.integers(2, 13))
            r = int(rng.integers(1, n + 1))
            f = rng.normal(size=(n, r))
            g = f @ f.T
            lam_max = float(np.linalg.eigvalsh(g)[-1])
            pts = gram_embed(SymMatrix(g))
            assert np.max(np.abs(pts @ pts.T - g)) <= 1e-8 * lam_max

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            gram_embed(SymMatrix(np.diag([1.0, -1.0])))

    def test_clamps_tiny_negative(self):
        g = np.diag([1.0, -1e-14])
        pts = gram_embed(SymMatrix(g))
        assert pts.shape == (2, 1)
