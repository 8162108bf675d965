"""Curvature of bi-invariant metrics.

For a bi-invariant metric the plane operator kappa(x, y) = |[x, y]|^2 / 4
determines every curvature quantity used here, so it is the primitive; the
Ricci form is built from it by summation over an orthonormal basis rather
than assumed equal to -B/4 (the tests cross-check that identity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import Decomposition, cartan_subalgebra, decompose
from .lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    Metric,
    SymmetricForm,
    bracket,
)
from .metrics import _require_biinvariant

TOL_EINSTEIN = 1e-8


class DegeneratePlaneError(ValueError):
    """The two vectors do not span a 2-plane."""


@dataclass(frozen=True)
class CurvatureReport:
    ricci: SymmetricForm
    scalar: float
    min_sectional_sampled: float
    zero_plane: tuple[np.ndarray, np.ndarray] | None
    einstein_constant: float | None
    flat: bool
    sectional_samples: np.ndarray


def kappa(
    L: LieAlgebra, metric: Metric, x: np.ndarray, y: np.ndarray, check: bool = True
) -> float:
    """|[x, y]|^2 / 4 in the metric; non-negative for bi-invariant metrics."""
    if check:
        _require_biinvariant(L, metric)
    z = bracket(L, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return 0.25 * float(z @ metric.matrix @ z)


def sectional(
    L: LieAlgebra,
    metric: Metric,
    x: np.ndarray,
    y: np.ndarray,
    check: bool = True,
    tol: float = DEFAULT_TOL,
) -> float:
    """kappa normalized by the squared area of the plane spanned by x, y."""
    if check:
        _require_biinvariant(L, metric)
    g = metric.matrix
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gram = float((x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2)
    if gram <= tol:
        raise DegeneratePlaneError("vectors do not span a 2-plane")
    return kappa(L, metric, x, y, check=False) / gram


def _m_orthonormal_basis(metric: Metric) -> np.ndarray:
    chol = np.linalg.cholesky(metric.matrix)
    return np.linalg.solve(chol.T, np.eye(metric.n))


def ricci_form(L: LieAlgebra, metric: Metric, check: bool = True) -> SymmetricForm:
    """Ric(x, x) = sum_j kappa(x, u_j) over a metric-orthonormal basis, polarized."""
    if check:
        _require_biinvariant(L, metric)
    u = _m_orthonormal_basis(metric)
    g = metric.matrix
    t = L.structure_tensor
    ric = np.zeros((L.dim, L.dim))
    for k in range(L.dim):
        adu = np.einsum("ijk,i->kj", t, u[:, k])  # columns [u_k, e_j] up to sign
        ric += adu.T @ g @ adu
    return SymmetricForm.from_matrix(0.25 * ric)


def scalar_curvature(L: LieAlgebra, metric: Metric, check: bool = True) -> float:
    """Trace of the Ricci form against the metric."""
    ric = ricci_form(L, metric, check=check)
    return float(np.trace(np.linalg.solve(metric.matrix, ric.matrix)))


def _sample_sectionals(
    L: LieAlgebra, metric: Metric, samples: int, rng: np.random.Generator
) -> np.ndarray:
    """Sectional curvature of metric-orthonormalized random Gaussian pairs."""
    if L.dim < 2 or samples <= 0:
        return np.zeros(0)
    g = metric.matrix
    t = L.structure_tensor
    xs = rng.standard_normal((samples, L.dim))
    ys = rng.standard_normal((samples, L.dim))
    xn = np.sqrt(np.einsum("bi,ij,bj->b", xs, g, xs))
    xs = xs / xn[:, None]
    proj = np.einsum("bi,ij,bj->b", ys, g, xs)
    ys = ys - proj[:, None] * xs
    yn = np.sqrt(np.einsum("bi,ij,bj->b", ys, g, ys))
    ys = ys / yn[:, None]
    z = np.einsum("ijk,bi,bj->bk", t, xs, ys)
    return 0.25 * np.einsum("bk,kl,bl->b", z, g, z)


def positivity_probe(
    L: LieAlgebra,
    metric: Metric,
    samples: int = 1000,
    seed: int = 0,
    dec: Decomposition | None = None,
    tol: float = DEFAULT_TOL,
) -> CurvatureReport:
    """Sample plane curvatures and report flatness, zero planes and Einstein-ness.

    A zero plane is exhibited deterministically whenever the algebra has two
    commuting summands (distinct ideals, or an ideal and the center).  The
    Einstein constant is the Rayleigh average of Ricci against the metric and
    is reported only when the Ricci form is that multiple of the metric.
    """
    _require_biinvariant(L, metric, tol)
    if dec is None:
        dec = decompose(L, seed)
    ric = ricci_form(L, metric, check=False)
    scal = float(np.trace(np.linalg.solve(metric.matrix, ric.matrix)))

    summands = [f.subspace for f in dec.ideals]
    if dec.center.dim:
        summands.append(dec.center)
    zero_plane = None
    if len(summands) >= 2:
        zero_plane = (summands[0].basis[:, 0], summands[1].basis[:, 0])
    elif dec.center.dim >= 2:
        zero_plane = (dec.center.basis[:, 0], dec.center.basis[:, 1])
    elif len(dec.ideals) == 1 and dec.ideals[0].fingerprint.rank >= 2:
        # a single simple ideal of rank >= 2 still has flat planes: any two
        # Cartan directions commute
        torus = cartan_subalgebra(L, dec.ideals[0].subspace, seed)
        zero_plane = (torus.basis[:, 0], torus.basis[:, 1])

    rng = np.random.default_rng(seed)
    secs = _sample_sectionals(L, metric, samples, rng)
    min_sec = float(np.min(secs)) if secs.size else 0.0

    c = scal / L.dim
    resid = float(np.max(np.abs(ric.matrix - c * metric.matrix)))
    einstein = c if resid <= TOL_EINSTEIN * (1.0 + float(np.max(np.abs(ric.matrix)))) else None

    return CurvatureReport(
        ricci=ric,
        scalar=scal,
        min_sectional_sampled=min_sec,
        zero_plane=zero_plane,
        einstein_constant=einstein,
        flat=L.is_abelian(tol),
        sectional_samples=secs,
    )
