import numpy as np
import pytest

from bimoduli import catalog
from bimoduli.decompose import (
    NotCompactTypeError,
    cartan_rank,
    commutant_basis,
    compact_type_check,
    decompose,
    group_by_isomorphism,
    root_fingerprint,
    simple_ideals,
)
from bimoduli.lie_core import (
    LieAlgebra,
    bracket,
    change_basis,
    derived_subalgebra,
    direct_sum,
    killing_form,
)
from conftest import COMPACT_NAMES, SEMISIMPLE_NAMES, commutant_dim_oracle

SU2 = catalog.builtin("su2").algebra
SO4 = catalog.builtin("so4").algebra


class TestCompactTypeCheck:
    def test_su2(self):
        assert compact_type_check(SU2).is_compact_type

    def test_nonbi2(self):
        report = compact_type_check(catalog.builtin("nonbi2").algebra)
        assert not report.is_compact_type

    def test_abelian(self):
        assert compact_type_check(catalog.builtin("abelian3").algebra).is_compact_type

    def test_catalog_expectations(self):
        for entry in catalog.entries():
            got = compact_type_check(entry.algebra).is_compact_type
            assert got == entry.expected.compact_type, entry.name

    def test_indefinite_killing_rejected(self):
        # sl(2, R): [h,e]=2e, [h,f]=-2f, [e,f]=h; semisimple but not compact
        sl2 = LieAlgebra(
            "sl2r",
            3,
            {(0, 1): [(1, 2.0)], (0, 2): [(2, -2.0)], (1, 2): [(0, 1.0)]},
        )
        report = compact_type_check(sl2)
        assert not report.is_compact_type
        assert "Killing" in report.reason


class TestCommutant:
    @pytest.mark.parametrize(
        "name,expected", [("su2", 1), ("so4", 2), ("su2x3", 3), ("su2_plus_su3", 2)]
    )
    def test_dimension(self, name, expected):
        alg = catalog.builtin(name).algebra
        der = derived_subalgebra(alg)
        assert len(commutant_basis(alg, der)) == expected
        assert commutant_dim_oracle(alg, der.basis) == expected

    def test_rejects_open_subspace(self):
        from bimoduli.lie_core import Subspace

        sub = Subspace(np.eye(3)[:, :2])  # span(e1, e2) is not closed in su(2)
        with pytest.raises(ValueError):
            commutant_basis(SU2, sub)

    def test_dimension_matches_ideal_count(self):
        for name in SEMISIMPLE_NAMES:
            alg = catalog.builtin(name).algebra
            dec = decompose(alg)
            assert len(commutant_basis(alg, derived_subalgebra(alg))) == len(dec.ideals)


class TestSimpleIdeals:
    def test_so4_splits_into_two(self):
        dec = simple_ideals(SO4, seed=0)
        assert dec.center.dim == 0
        assert sorted(dec.ideal_dims) == [3, 3]

    def test_abelian(self):
        dec = simple_ideals(catalog.builtin("abelian3").algebra, seed=0)
        assert dec.center.dim == 3
        assert dec.ideals == ()

    def test_su2_plus_r2(self):
        dec = simple_ideals(catalog.builtin("su2_plus_r2").algebra, seed=0)
        assert dec.center.dim == 2
        assert dec.ideal_dims == (3,)

    def test_rejects_non_compact_type(self):
        with pytest.raises(NotCompactTypeError):
            simple_ideals(catalog.builtin("nonbi2").algebra)

    def test_invariants(self):
        for name in COMPACT_NAMES:
            alg = catalog.builtin(name).algebra
            dec = decompose(alg, seed=0)
            assert dec.center.dim + sum(dec.ideal_dims) == alg.dim
            subs = [f.subspace for f in dec.ideals]
            for a in range(len(subs)):
                pa = subs[a].basis
                # bracket-closed
                for u in pa.T:
                    for v in pa.T:
                        w = bracket(alg, u, v)
                        assert np.linalg.norm(w - pa @ (pa.T @ w)) <= 1e-8
                # commutes with the other ideals and the center
                for b in range(a + 1, len(subs)):
                    for u in pa.T:
                        for v in subs[b].basis.T:
                            assert np.linalg.norm(bracket(alg, u, v)) <= 1e-8
                for u in pa.T:
                    for v in dec.center.basis.T:
                        assert np.linalg.norm(bracket(alg, u, v)) <= 1e-8
            # classes partition the ideals by fingerprint
            flat = sorted(i for cls in dec.classes for i in cls)
            assert flat == list(range(len(dec.ideals)))
            for cls in dec.classes:
                fps = {dec.ideals[i].fingerprint for i in cls}
                assert len(fps) == 1

    def test_killing_restriction_is_intrinsic(self):
        for name in ["so4", "su2_plus_su3", "su2x3", "so5"]:
            alg = catalog.builtin(name).algebra
            b = killing_form(alg).matrix
            dec = decompose(alg, seed=0)
            for factor in dec.ideals:
                p = factor.subspace.basis
                restricted = p.T @ b @ p
                assert np.max(np.linalg.eigvalsh(restricted)) < 0  # negative definite
                # rebuild the ideal's own bracket table and take its Killing form
                d = p.shape[1]
                table = {}
                for i in range(d):
                    for j in range(i + 1, d):
                        w = p.T @ bracket(alg, p[:, i], p[:, j])
                        table[(i, j)] = [(k, w[k]) for k in range(d) if abs(w[k]) > 1e-12]
                inner = killing_form(LieAlgebra("ideal", d, table)).matrix
                assert np.max(np.abs(inner - restricted)) <= 1e-8

    def test_deterministic_for_fixed_seed(self):
        a = decompose(SO4, seed=42)
        b = decompose(SO4, seed=42)
        assert np.array_equal(a.center.basis, b.center.basis)
        assert a.classes == b.classes
        for fa, fb in zip(a.ideals, b.ideals):
            assert np.array_equal(fa.subspace.basis, fb.subspace.basis)
            assert fa.fingerprint == fb.fingerprint


class TestFingerprints:
    @pytest.mark.parametrize(
        "name,dim,rank,profile",
        [
            ("su2", 3, 1, (1.0, 1.0)),
            ("su3", 8, 2, (1.0,) * 6),
            ("so5", 10, 2, (1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0)),
        ],
    )
    def test_known_profiles(self, name, dim, rank, profile):
        alg = catalog.builtin(name).algebra
        dec = decompose(alg, seed=0)
        fp = dec.ideals[0].fingerprint
        assert (fp.dim, fp.rank, fp.root_profile) == (dim, rank, profile)
        assert fp.root_count == dim - rank == len(profile)

    @pytest.mark.parametrize("name,rank", [("su2", 1), ("su3", 2), ("so5", 2)])
    def test_cartan_rank(self, name, rank):
        alg = catalog.builtin(name).algebra
        dec = decompose(alg, seed=0)
        assert cartan_rank(alg, dec.ideals[0].subspace, seed=3) == rank

    def test_seed_independent(self):
        dec = decompose(catalog.builtin("so5").algebra, seed=0)
        sub = dec.ideals[0].subspace
        alg = catalog.builtin("so5").algebra
        fps = {root_fingerprint(alg, sub, seed=s) for s in range(5)}
        assert len(fps) == 1

    def test_scaled_su2_matches_su2(self):
        base = decompose(SU2).ideals[0].fingerprint
        for name in ["su2_lambda_0.5", "su2_lambda_2"]:
            alg = catalog.builtin(name).algebra
            assert decompose(alg).ideals[0].fingerprint == base

    def test_su3_so5_separated(self):
        fp3 = decompose(catalog.builtin("su3").algebra).ideals[0].fingerprint
        fp5 = decompose(catalog.builtin("so5").algebra).ideals[0].fingerprint
        assert fp3 != fp5


class TestGrouping:
    def test_so4_one_class_of_two(self):
        assert decompose(SO4).class_sizes == (2,)

    def test_su2_plus_su3_two_singletons(self):
        dec = decompose(catalog.builtin("su2_plus_su3").algebra)
        assert dec.class_sizes == (1, 1)
        assert [fp.dim for fp in dec.class_fingerprints] == [3, 8]

    def test_mixed_multiplicities(self):
        alg = direct_sum(
            catalog.builtin("su2x2").algebra, catalog.builtin("su3").algebra
        )
        dec = decompose(alg)
        assert dec.class_sizes == (2, 1)
        assert [fp.dim for fp in dec.class_fingerprints] == [3, 8]

    def test_grouping_idempotent(self):
        dec = decompose(SO4)
        assert group_by_isomorphism(dec).classes == dec.classes


class TestBasisIndependence:
    def test_orthogonal_conjugation_of_so4(self):
        rng = np.random.default_rng(9)
        base = decompose(SO4, seed=0)
        base_fps = sorted(
            (f.fingerprint.dim, f.fingerprint.rank, f.fingerprint.root_profile)
            for f in base.ideals
        )
        for trial in range(5):
            q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
            moved = change_basis(SO4, q, name=f"so4_rot{trial}")
            dec = decompose(moved, seed=trial)
            assert dec.center.dim == 0
            assert sorted(dec.ideal_dims) == [3, 3]
            fps = sorted(
                (f.fingerprint.dim, f.fingerprint.rank, f.fingerprint.root_profile)
                for f in dec.ideals
            )
            assert fps == base_fps
