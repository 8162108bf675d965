"""Shared helpers: independent oracles and fixture builders for the suite."""

from __future__ import annotations

import numpy as np

from bimoduli.lie_core import LieAlgebra, Metric, killing_form

COMPACT_NAMES = [
    "abelian1",
    "abelian2",
    "abelian3",
    "su2",
    "su2_lambda_0.5",
    "su2_lambda_2",
    "so4",
    "so4_blocks",
    "su2x2",
    "su2x3",
    "su2_plus_r2",
    "su3",
    "so5",
    "su2_plus_su3",
]
SEMISIMPLE_NAMES = [n for n in COMPACT_NAMES if not n.startswith("abelian") and n != "su2_plus_r2"]


def neg_killing_metric(alg: LieAlgebra) -> Metric:
    return Metric.from_matrix(-killing_form(alg).matrix)


def brute_force_ad(alg: LieAlgebra, x: np.ndarray) -> np.ndarray:
    """ad(x) built column by column from the sparse table, no einsum."""
    n = alg.dim
    out = np.zeros((n, n))
    x = np.asarray(x, dtype=float)
    for j in range(n):
        col = np.zeros(n)
        for (a, b), terms in alg.brackets.items():
            for k, c in terms:
                # [x, e_j] picks up c * x_a from the (a, j=b) slot and -c * x_b from (j=a, b)
                if b == j:
                    col[k] += c * x[a]
                if a == j:
                    col[k] -= c * x[b]
        out[:, j] = col
    return out


def brute_force_killing(alg: LieAlgebra) -> np.ndarray:
    """Killing form via explicit trace loops over brute-force ad matrices."""
    n = alg.dim
    ads = [brute_force_ad(alg, np.eye(n)[i]) for i in range(n)]
    b = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            prod = ads[i] @ ads[j]
            b[i, j] = sum(prod[a, a] for a in range(n))
    return b


def _svd_nullity(a: np.ndarray, n: int) -> int:
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return a.shape[1]
    return a.shape[1] - int(np.sum(s > 1e-9 * s[0] * n))


def invariant_form_dim_oracle(alg: LieAlgebra) -> int:
    """Solve the ad-invariance system on all n^2 unknowns with loop-built rows."""
    n = alg.dim
    t = alg.structure_tensor
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = np.zeros(n * n)
                for m in range(n):
                    row[m * n + k] += t[i, j, m]
                    row[j * n + m] += t[i, k, m]
                rows.append(row)
    for p in range(n):
        for q in range(p + 1, n):
            row = np.zeros(n * n)
            row[p * n + q] = 1.0
            row[q * n + p] = -1.0
            rows.append(row)
    return _svd_nullity(np.vstack(rows), n)


def commutant_dim_oracle(alg: LieAlgebra, basis: np.ndarray) -> int:
    """Dimension of {M : M ad(x)|_S = ad(x)|_S M}, rows built entry by entry."""
    d = basis.shape[1]
    rows = []
    for a in range(d):
        ad_a = basis.T @ brute_force_ad(alg, basis[:, a]) @ basis
        for p in range(d):
            for q in range(d):
                row = np.zeros(d * d)
                for r in range(d):
                    row[p * d + r] += ad_a[r, q]
                    row[r * d + q] -= ad_a[p, r]
                rows.append(row)
    return _svd_nullity(np.vstack(rows), alg.dim)
