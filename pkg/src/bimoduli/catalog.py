"""Built-in algebras with known structure constants and ground-truth records.

The 8- and 10-dimensional entries are generated from standard matrix bases
at import time instead of being hand-typed; this removes transcription
errors and the results are checked by the Jacobi validator in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lie_core import LieAlgebra, direct_sum


@dataclass(frozen=True)
class CatalogExpected:
    """Pipeline outputs the entry must reproduce (enforced in the test suite)."""

    compact_type: bool
    center_dim: int
    ideal_dims: tuple[int, ...] | None
    class_sizes: tuple[int, ...] | None
    invariant_form_dim: int
    bi_description: str | None
    ebi_description: str | None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    expected: CatalogExpected
    summary: str


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(f"abelian{n}", n, {})


def su2(lam: float = 1.0, name: str | None = None) -> LieAlgebra:
    # Cyclic table [e1,e2] = lam e3, [e2,e3] = lam e1, [e3,e1] = lam e2;
    # a valid algebra for every lam > 0, isomorphic to the lam = 1 one.
    return LieAlgebra(
        name or "su2",
        3,
        {(0, 1): [(2, lam)], (1, 2): [(0, lam)], (0, 2): [(1, -lam)]},
    )


def nonbi2() -> LieAlgebra:
    # The unique non-abelian 2-dim algebra; its derived algebra is a proper
    # nonzero ideal, so no bi-invariant metric exists.
    return LieAlgebra("nonbi2", 2, {(0, 1): [(1, 1.0)]})


def _algebra_from_matrix_basis(name: str, mats: list[np.ndarray]) -> LieAlgebra:
    """Expand commutators of a matrix basis into structure constants."""
    d = len(mats)
    flat = np.column_stack(
        [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats]
    )
    table: dict = {}
    for i in range(d):
        for j in range(i + 1, d):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            rhs = np.concatenate([comm.real.ravel(), comm.imag.ravel()])
            coef, *_ = np.linalg.lstsq(flat, rhs, rcond=None)
            scale = max(1.0, float(np.max(np.abs(coef))))
            terms = [(k, float(c)) for k, c in enumerate(coef) if abs(c) > 1e-10 * scale]
            if terms:
                table[(i, j)] = terms
    return LieAlgebra(name, d, table)


def so_n(n: int, name: str | None = None) -> LieAlgebra:
    """so(n) in the standard antisymmetric-matrix basis E_ij - E_ji, i < j."""
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            m[i, j] = 1.0
            m[j, i] = -1.0
            mats.append(m)
    return _algebra_from_matrix_basis(name or f"so{n}", mats)


def su3() -> LieAlgebra:
    """su(3) from the skew-Hermitian halves of the Gell-Mann matrices."""
    l1 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
    l2 = np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])
    l3 = np.array([[1, 0, 0], [0, -1, 0], [0, 0, 0]], dtype=complex)
    l4 = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex)
    l5 = np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]])
    l6 = np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
    l7 = np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]])
    l8 = np.array([[1, 0, 0], [0, 1, 0], [0, 0, -2]], dtype=complex) / np.sqrt(3.0)
    mats = [-0.5j * m for m in (l1, l2, l3, l4, l5, l6, l7, l8)]
    return _algebra_from_matrix_basis("su3", mats)


def su2_power(k: int) -> LieAlgebra:
    alg = su2()
    for _ in range(k - 1):
        alg = direct_sum(alg, su2())
    return LieAlgebra(f"su2x{k}", alg.dim, dict(alg.brackets))


def _point() -> str:
    return "point"


def _entries() -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}

    def add(alg: LieAlgebra, expected: CatalogExpected, summary: str) -> None:
        entries[alg.name] = CatalogEntry(alg.name, alg, expected, summary)

    for n in (1, 2, 3):
        add(
            abelian(n),
            CatalogExpected(
                compact_type=True,
                center_dim=n,
                ideal_dims=(),
                class_sizes=(),
                invariant_form_dim=n * (n + 1) // 2,
                bi_description=_point(),
                ebi_description=_point(),
            ),
            f"abelian R^{n}: every inner product is bi-invariant, moduli a point",
        )

    add(
        nonbi2(),
        CatalogExpected(
            compact_type=False,
            center_dim=0,
            ideal_dims=None,
            class_sizes=None,
            invariant_form_dim=1,  # span of diag(1, 0); nothing positive definite
            bi_description=None,
            ebi_description=None,
        ),
        "2-dim [e1,e2]=e2 algebra: admits no bi-invariant metric",
    )

    simple_expected = CatalogExpected(
        compact_type=True,
        center_dim=0,
        ideal_dims=(3,),
        class_sizes=(1,),
        invariant_form_dim=1,
        bi_description="ℝ⁺",
        ebi_description=_point(),
    )
    add(su2(), simple_expected, "su(2): one simple ideal, one metric up to scale")
    for lam in (0.5, 2.0):
        add(
            su2(lam, name=f"su2_lambda_{lam:g}"),
            simple_expected,
            f"su(2) with brackets scaled by {lam:g}; isomorphic to su2",
        )

    two_su2_expected = CatalogExpected(
        compact_type=True,
        center_dim=0,
        ideal_dims=(3, 3),
        class_sizes=(2,),
        invariant_form_dim=2,
        bi_description="SP^2(ℝ)",
        ebi_description="𝕊^1₊/S_2",
    )
    add(so_n(4), two_su2_expected, "so(4) in the antisymmetric 4x4 basis; two su(2) ideals")
    add(
        direct_sum(su2(), su2(), name="so4_blocks"),
        two_su2_expected,
        "so(4) presented as an explicit su(2)+su(2) block table",
    )
    add(su2_power(2), two_su2_expected, "two commuting su(2) blocks")
    add(
        su2_power(3),
        CatalogExpected(
            compact_type=True,
            center_dim=0,
            ideal_dims=(3, 3, 3),
            class_sizes=(3,),
            invariant_form_dim=3,
            bi_description="SP^3(ℝ)",
            ebi_description="𝕊^2₊/S_3",
        ),
        "three commuting su(2) blocks",
    )
    add(
        direct_sum(su2(), abelian(2), name="su2_plus_r2"),
        CatalogExpected(
            compact_type=True,
            center_dim=2,
            ideal_dims=(3,),
            class_sizes=(1,),
            invariant_form_dim=4,  # 1 ideal + 2*(2+1)/2 center block
            bi_description="ℝ⁺",
            ebi_description=_point(),
        ),
        "su(2) plus a 2-dim center",
    )
    add(
        su3(),
        CatalogExpected(
            compact_type=True,
            center_dim=0,
            ideal_dims=(8,),
            class_sizes=(1,),
            invariant_form_dim=1,
            bi_description="ℝ⁺",
            ebi_description=_point(),
        ),
        "su(3): rank 2, all six roots of equal length",
    )
    add(
        so_n(5),
        CatalogExpected(
            compact_type=True,
            center_dim=0,
            ideal_dims=(10,),
            class_sizes=(1,),
            invariant_form_dim=1,
            bi_description="ℝ⁺",
            ebi_description=_point(),
        ),
        "so(5): rank 2, four short and four long roots",
    )
    add(
        direct_sum(su2(), su3(), name="su2_plus_su3"),
        CatalogExpected(
            compact_type=True,
            center_dim=0,
            ideal_dims=(3, 8),
            class_sizes=(1, 1),
            invariant_form_dim=2,
            bi_description="ℝ⁺ × ℝ⁺",
            ebi_description="𝕊^1₊",
        ),
        "two non-isomorphic simple ideals",
    )
    return entries


_ENTRIES = _entries()


def names() -> list[str]:
    return list(_ENTRIES)


def entries() -> list[CatalogEntry]:
    return list(_ENTRIES.values())


def builtin(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(_ENTRIES)}") from None
