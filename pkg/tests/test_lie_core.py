import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimoduli import catalog
from bimoduli.lie_core import (
    LieAlgebra,
    Metric,
    NotPositiveDefiniteError,
    Subspace,
    SymmetricForm,
    ad_matrix,
    bracket,
    center,
    change_basis,
    derived_subalgebra,
    direct_sum,
    is_skew_adjoint_all,
    killing_form,
    skew_adjoint_residual,
    validate_jacobi,
)
from conftest import (
    COMPACT_NAMES,
    SEMISIMPLE_NAMES,
    brute_force_killing,
    neg_killing_metric,
)

SU2 = catalog.builtin("su2").algebra
AB3 = catalog.builtin("abelian3").algebra
E = np.eye(3)

coord3 = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False), min_size=3, max_size=3
)


class TestBracket:
    def test_su2_basis_pairs(self):
        np.testing.assert_allclose(bracket(SU2, E[0], E[1]), E[2])
        np.testing.assert_allclose(bracket(SU2, E[1], E[2]), E[0])
        np.testing.assert_allclose(bracket(SU2, E[2], E[0]), E[1])

    def test_bilinear_expansion(self):
        # [e2 + e3, e1] = -e3 + e2
        np.testing.assert_allclose(
            bracket(SU2, E[1] + E[2], E[0]), E[1] - E[2], atol=1e-15
        )

    @settings(max_examples=50, deadline=None)
    @given(coord3)
    def test_self_bracket_vanishes(self, xs):
        x = np.array(xs)
        assert np.max(np.abs(bracket(SU2, x, x))) <= 1e-12 * max(1.0, float(x @ x))

    @settings(max_examples=50, deadline=None)
    @given(coord3, coord3)
    def test_antisymmetry(self, xs, ys):
        x, y = np.array(xs), np.array(ys)
        np.testing.assert_allclose(bracket(SU2, x, y), -bracket(SU2, y, x), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            bracket(SU2, np.ones(4), np.ones(3))


class TestAdMatrix:
    def test_su2_ad_e1(self):
        m = ad_matrix(SU2, E[0]).matrix
        np.testing.assert_allclose(m @ E[0], np.zeros(3))
        np.testing.assert_allclose(m @ E[1], E[2])
        np.testing.assert_allclose(m @ E[2], -E[1])

    def test_abelian_ad_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            m = ad_matrix(AB3, rng.standard_normal(3)).matrix
            assert np.all(m == 0.0)

    def test_matches_bracket(self):
        rng = np.random.default_rng(1)
        x, y = rng.standard_normal(3), rng.standard_normal(3)
        np.testing.assert_allclose(ad_matrix(SU2, x).matrix @ y, bracket(SU2, x, y))


class TestJacobi:
    def test_catalog_entries_valid(self):
        for entry in catalog.entries():
            assert validate_jacobi(entry.algebra) == [], entry.name

    def test_rescaled_cyclic_table_is_still_valid(self):
        # Scaling the whole cyclic table, or one slot of it, keeps the cyclic
        # sum zero: every term hits a repeated bracket.  This is the scaled
        # su(2) family, not a broken algebra.
        alg = LieAlgebra(
            "scaled", 3, {(0, 1): [(2, 1.1)], (1, 2): [(0, 1.0)], (0, 2): [(1, -1.0)]}
        )
        assert validate_jacobi(alg) == []

    def test_detects_violation(self):
        bad = LieAlgebra(
            "bad",
            3,
            {(0, 1): [(2, 1.0), (0, 0.1)], (1, 2): [(0, 1.0)], (0, 2): [(1, -1.0)]},
        )
        violations = validate_jacobi(bad)
        assert (0, 1, 2) in violations

    def test_random_vector_cyclic_sum(self):
        rng = np.random.default_rng(7)
        for name in COMPACT_NAMES:
            alg = catalog.builtin(name).algebra
            for _ in range(100):
                x, y, z = rng.standard_normal((3, alg.dim))
                s = (
                    bracket(alg, bracket(alg, x, y), z)
                    + bracket(alg, bracket(alg, y, z), x)
                    + bracket(alg, bracket(alg, z, x), y)
                )
                assert np.max(np.abs(s)) <= 1e-9


class TestKillingForm:
    def test_su2_is_minus_two_identity(self):
        b = killing_form(SU2).matrix
        np.testing.assert_allclose(b, -2.0 * np.eye(3), atol=1e-12)
        np.testing.assert_allclose(b, brute_force_killing(SU2), atol=1e-12)

    def test_abelian_zero(self):
        assert np.all(killing_form(AB3).matrix == 0.0)

    def test_so4_blocks_is_block_diagonal(self):
        alg = catalog.builtin("so4_blocks").algebra
        b = killing_form(alg).matrix
        expected = np.zeros((6, 6))
        expected[:3, :3] = -2.0 * np.eye(3)
        expected[3:, 3:] = -2.0 * np.eye(3)
        np.testing.assert_allclose(b, expected, atol=1e-12)
        np.testing.assert_allclose(b, brute_force_killing(alg), atol=1e-12)

    def test_ad_invariance(self):
        rng = np.random.default_rng(11)
        for name in COMPACT_NAMES:
            alg = catalog.builtin(name).algebra
            b = killing_form(alg)
            for _ in range(20):
                x, y, z = rng.standard_normal((3, alg.dim))
                resid = b.value(bracket(alg, x, y), z) + b.value(y, bracket(alg, x, z))
                assert abs(resid) <= 1e-8


class TestSkewAdjoint:
    def test_su2_negated_killing(self):
        assert is_skew_adjoint_all(SU2, neg_killing_metric(SU2))

    def test_abelian_any_metric(self):
        rng = np.random.default_rng(3)
        a = rng.standard_normal((3, 3))
        assert is_skew_adjoint_all(AB3, Metric.from_matrix(a @ a.T + np.eye(3)))

    def test_su2_stretched_metric_fails(self):
        assert not is_skew_adjoint_all(SU2, Metric.from_matrix(np.diag([1.0, 1.0, 4.0])))
        # the violating triple is the only basis triple
        assert skew_adjoint_residual(SU2, np.diag([1.0, 1.0, 4.0])) == pytest.approx(3.0)

    def test_negated_killing_on_semisimple_entries(self):
        for name in SEMISIMPLE_NAMES:
            alg = catalog.builtin(name).algebra
            assert is_skew_adjoint_all(alg, neg_killing_metric(alg)), name


class TestCenterAndDerived:
    def test_su2(self):
        assert center(SU2).dim == 0
        assert derived_subalgebra(SU2).dim == 3

    def test_abelian(self):
        assert center(AB3).dim == 3
        assert derived_subalgebra(AB3).dim == 0

    def test_su2_plus_r2(self):
        alg = catalog.builtin("su2_plus_r2").algebra
        z = center(alg)
        d = derived_subalgebra(alg)
        assert z.dim == 2
        assert d.dim == 3
        # returned center vectors really commute with every basis vector
        for col in z.basis.T:
            for j in range(alg.dim):
                assert np.linalg.norm(bracket(alg, col, np.eye(alg.dim)[j])) <= 1e-9
        assert np.max(np.abs(z.basis.T @ d.basis)) <= 1e-12

    def test_compact_entries_split(self):
        for name in COMPACT_NAMES:
            alg = catalog.builtin(name).algebra
            z, d = center(alg), derived_subalgebra(alg)
            assert z.dim + d.dim == alg.dim, name
            joint = np.column_stack([z.basis, d.basis])
            assert np.linalg.matrix_rank(joint) == alg.dim


class TestTypes:
    def test_symmetric_form_exact_symmetry(self):
        a = np.arange(9.0).reshape(3, 3)
        m = SymmetricForm.from_matrix(a).matrix
        assert np.array_equal(m, m.T)

    def test_metric_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefiniteError):
            Metric.from_matrix(np.diag([1.0, -1.0]))

    def test_subspace_rejects_skewed_basis(self):
        with pytest.raises(ValueError):
            Subspace(np.array([[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]]))

    def test_algebra_rejects_bad_indices(self):
        with pytest.raises(ValueError):
            LieAlgebra("x", 2, {(1, 0): [(0, 1.0)]})
        with pytest.raises(ValueError):
            LieAlgebra("x", 2, {(0, 1): [(5, 1.0)]})


class TestBasisChanges:
    def test_identity_change_keeps_table(self):
        moved = change_basis(SU2, np.eye(3))
        assert moved.brackets == SU2.brackets

    def test_orthogonal_change_keeps_jacobi_and_killing_signature(self):
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        moved = change_basis(SU2, q)
        assert validate_jacobi(moved) == []
        evals = np.linalg.eigvalsh(killing_form(moved).matrix)
        np.testing.assert_allclose(evals, [-2.0, -2.0, -2.0], atol=1e-10)

    def test_direct_sum_blocks_commute(self):
        both = direct_sum(SU2, SU2)
        assert both.dim == 6
        for i in range(3):
            for j in range(3, 6):
                assert np.linalg.norm(bracket(both, np.eye(6)[i], np.eye(6)[j])) == 0.0
