import numpy as np
import pytest

from bayesdn.linalg import (
    NotPositiveDefiniteError,
    assemble_last,
    cholesky_pd,
    eigenvalues_sym,
    invert_pd,
    mirror_lower,
    partial_correlation,
    partition_last,
    require_symmetric,
)

from helpers import charpoly_eigenvalues, random_pd, random_symmetric


class TestCholesky:
    def test_identity(self):
        fac = cholesky_pd(np.eye(3))
        np.testing.assert_array_equal(fac.lower, np.eye(3))
        assert fac.logdet == 0.0

    def test_known_factor(self):
        # [[4, 2], [2, 3]] factors as [[2, 0], [1, sqrt(2)]]
        m = np.array([[4.0, 2.0], [2.0, 3.0]])
        fac = cholesky_pd(m)
        expected = np.array([[2.0, 0.0], [1.0, np.sqrt(2.0)]])
        np.testing.assert_allclose(fac.lower, expected, atol=1e-14)
        np.testing.assert_allclose(fac.lower @ fac.lower.T, m, rtol=1e-10)

    def test_indefinite_raises_with_minor(self):
        # eigenvalues 3 and -1
        m = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(NotPositiveDefiniteError) as exc:
            cholesky_pd(m)
        assert exc.value.minor == 2

    def test_pivot_floor_is_scale_aware(self):
        with pytest.raises(NotPositiveDefiniteError):
            cholesky_pd(np.diag([1.0, 1e-20]))
        # same shape but uniformly tiny scale is fine
        cholesky_pd(np.diag([1e-20, 1e-20]))

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            cholesky_pd(np.array([[1.0, 0.1], [0.2, 1.0]]))


class TestInvert:
    def test_identity(self):
        np.testing.assert_array_equal(invert_pd(np.eye(4)), np.eye(4))

    def test_diagonal(self):
        np.testing.assert_allclose(invert_pd(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))

    def test_random_pd_residual(self):
        rng = np.random.default_rng(0)
        m = random_pd(5, rng)
        residual = np.abs(m @ invert_pd(m) - np.eye(5)).max()
        assert residual <= 1e-8

    def test_result_exactly_symmetric(self):
        rng = np.random.default_rng(1)
        inv = invert_pd(random_pd(6, rng))
        np.testing.assert_array_equal(inv, inv.T)


class TestPartialCorrelation:
    def test_identity(self):
        np.testing.assert_array_equal(partial_correlation(np.eye(3)), np.eye(3))

    def test_2x2(self):
        rho = partial_correlation(np.array([[1.0, 0.5], [0.5, 1.0]]))
        assert rho[0, 1] == pytest.approx(-0.5)
        assert rho[0, 0] == 1.0

    def test_ar1_entrywise_formula(self):
        theta = np.array([[0.7 ** abs(i - j) for j in range(3)] for i in range(3)])
        rho = partial_correlation(theta)
        for i in range(3):
            for j in range(3):
                if i != j:
                    expected = -theta[i, j] / np.sqrt(theta[i, i] * theta[j, j])
                    assert rho[i, j] == pytest.approx(expected, abs=1e-15)
        assert np.all(np.abs(rho[~np.eye(3, dtype=bool)]) < 1.0)

    def test_invariant_under_diagonal_rescaling(self):
        rng = np.random.default_rng(2)
        theta = random_pd(5, rng)
        d = np.diag(rng.uniform(0.5, 3.0, size=5))
        scaled = mirror_lower(d @ theta @ d)
        np.testing.assert_allclose(
            partial_correlation(scaled), partial_correlation(theta), atol=1e-10
        )

    def test_indefinite_rejected(self):
        with pytest.raises(NotPositiveDefiniteError):
            partial_correlation(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestPartition:
    def test_identity_last_col(self):
        m11, m12, m22 = partition_last(np.eye(3), 2)
        np.testing.assert_array_equal(m11, np.eye(2))
        np.testing.assert_array_equal(m12, np.zeros(2))
        assert m22 == 1.0

    def test_first_column(self):
        m = np.array([[1.0, 2.0, 3.0], [2.0, 5.0, 6.0], [3.0, 6.0, 9.0]])
        m11, m12, m22 = partition_last(m, 0)
        assert m22 == 1.0
        np.testing.assert_array_equal(m12, [2.0, 3.0])
        np.testing.assert_array_equal(m11, [[5.0, 6.0], [6.0, 9.0]])

    def test_round_trip_exact_all_cols(self):
        rng = np.random.default_rng(3)
        m = random_symmetric(6, rng)
        for col in range(6):
            m11, m12, m22 = partition_last(m, col)
            np.testing.assert_array_equal(assemble_last(m11, m12, m22, col), m)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            partition_last(np.eye(3), 3)


class TestEigenvalues:
    def test_diagonal(self):
        np.testing.assert_allclose(eigenvalues_sym(np.diag([1.0, 2.0, 3.0])), [1, 2, 3])

    def test_swap(self):
        np.testing.assert_allclose(eigenvalues_sym(np.array([[0.0, 1.0], [1.0, 0.0]])), [-1, 1])

    def test_against_charpoly_roots(self):
        rng = np.random.default_rng(4)
        for p in (2, 3, 4):
            m = random_symmetric(p, rng)
            np.testing.assert_allclose(
                eigenvalues_sym(m), charpoly_eigenvalues(m), atol=1e-8
            )

    def test_sum_trace_product_det(self):
        rng = np.random.default_rng(5)
        m = random_pd(6, rng)
        ev = eigenvalues_sym(m)
        assert np.sum(ev) == pytest.approx(np.trace(m), abs=1e-8)
        assert np.sum(np.log(ev)) == pytest.approx(cholesky_pd(m).logdet, rel=1e-6)


class TestSymmetryHelpers:
    def test_mirror_lower_exact(self):
        rng = np.random.default_rng(6)
        a = rng.standard_normal((5, 5))
        m = mirror_lower(a)
        np.testing.assert_array_equal(m, m.T)
        np.testing.assert_array_equal(np.tril(m), np.tril(a))

    def test_require_symmetric_rejects_rectangular(self):
        with pytest.raises(ValueError):
            require_symmetric(np.zeros((2, 3)))
