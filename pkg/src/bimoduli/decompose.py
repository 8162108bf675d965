"""Compact-type test and splitting into a center plus simple ideals.

The splitting uses the commutant of the adjoint action on the derived
subalgebra: every operator commuting with all ad(x) there acts as a scalar
on each simple ideal, so the eigenspaces of a generic commutant element
recover the ideals.  Ideals are then fingerprinted by (dimension, rank,
root-length profile), which separates non-isomorphic compact simple
algebras and is invariant under any change of basis.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    LinearMap,
    Subspace,
    bracket,
    center,
    derived_subalgebra,
    killing_form,
    nullspace,
    rank_tolerance,
    validate_jacobi,
)

# Eigenvalues of a commutant draw closer than this (relatively) are treated
# as one cluster; squared root lengths are rounded to this many decimals.
CLUSTER_RTOL = 1e-6
PROFILE_DECIMALS = 6
MAX_RETRIES = 8


class NotCompactTypeError(ValueError):
    """The algebra does not admit a bi-invariant metric."""


class DecompositionError(RuntimeError):
    """Random splitting failed after the retry budget (degenerate input)."""


@dataclass(frozen=True)
class CompactTypeReport:
    is_compact_type: bool
    reason: str


@dataclass(frozen=True, order=True)
class Fingerprint:
    """Isomorphism invariant of a compact simple ideal.

    ``root_profile`` lists squared root lengths (both signs of each root),
    measured in the metric dual to the negated Killing form on a Cartan
    subalgebra and normalized so the minimum is 1.
    """

    dim: int
    rank: int
    root_profile: tuple[float, ...]

    @property
    def root_count(self) -> int:
        return self.dim - self.rank


class IdealFactor(NamedTuple):
    subspace: Subspace
    fingerprint: Fingerprint


@dataclass(frozen=True)
class Decomposition:
    center: Subspace
    ideals: tuple[IdealFactor, ...]
    classes: tuple[tuple[int, ...], ...] = ()

    @property
    def ideal_dims(self) -> tuple[int, ...]:
        return tuple(f.subspace.dim for f in self.ideals)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def class_fingerprints(self) -> tuple[Fingerprint, ...]:
        return tuple(self.ideals[c[0]].fingerprint for c in self.classes)


def compact_type_check(L: LieAlgebra) -> CompactTypeReport:
    """Does the algebra split as (semisimple with definite Killing form) + center?"""
    if validate_jacobi(L):
        return CompactTypeReport(False, "structure constants violate the Jacobi identity")
    z = center(L)
    d = derived_subalgebra(L)
    n = L.dim
    if z.dim + d.dim != n:
        return CompactTypeReport(
            False,
            f"center (dim {z.dim}) and derived subalgebra (dim {d.dim}) do not fill dimension {n}",
        )
    if z.dim and d.dim:
        joint = np.column_stack([z.basis, d.basis])
        s = np.linalg.svd(joint, compute_uv=False)
        if int(np.sum(s > rank_tolerance(s, n))) != n:
            return CompactTypeReport(False, "center and derived subalgebra intersect")
    if d.dim:
        kd = d.basis.T @ killing_form(L).matrix @ d.basis
        evals = np.linalg.eigvalsh(0.5 * (kd + kd.T))
        tol = rank_tolerance(np.sort(np.abs(evals))[::-1], n)
        if float(evals[-1]) > -tol:
            return CompactTypeReport(
                False,
                "Killing form is not negative definite on the derived subalgebra "
                f"(max eigenvalue {evals[-1]:.3e})",
            )
    return CompactTypeReport(True, "center plus semisimple part with definite Killing form")


def _ad_restricted(L: LieAlgebra, x: np.ndarray, sub: Subspace) -> np.ndarray:
    ad = np.einsum("ijk,i->kj", L.structure_tensor, x)
    return sub.basis.T @ ad @ sub.basis


def _check_bracket_closed(L: LieAlgebra, sub: Subspace, tol: float) -> float:
    """Max norm of the part of [u, v] sticking out of the subspace."""
    b = sub.basis
    worst = 0.0
    for a in range(sub.dim):
        for c in range(a + 1, sub.dim):
            w = bracket(L, b[:, a], b[:, c])
            resid = w - b @ (b.T @ w)
            worst = max(worst, float(np.linalg.norm(resid)))
    return worst


def commutant_basis(L: LieAlgebra, sub: Subspace) -> list[LinearMap]:
    """Basis of operators on ``sub`` commuting with every restricted ad(x).

    For the derived subalgebra of a compact-type algebra the dimension is
    exactly the number of simple ideals.
    """
    scale = max(1.0, float(np.max(np.abs(L.structure_tensor))) if L.dim else 1.0)
    if _check_bracket_closed(L, sub, DEFAULT_TOL) > 1e-8 * scale:
        raise ValueError("subspace is not bracket-closed")
    d = sub.dim
    if d == 0:
        return []
    eye = np.eye(d)
    rows = []
    for a in range(d):
        ad_a = _ad_restricted(L, sub.basis[:, a], sub)
        # row-major vec: vec(M A - A M) = (kron(I, A^T) - kron(A, I)) vec(M)
        rows.append(np.kron(eye, ad_a.T) - np.kron(ad_a, eye))
    null = nullspace(np.vstack(rows), L.dim)
    return [LinearMap(null[:, i].reshape(d, d)) for i in range(null.shape[1])]


def _inv_sqrt_and_sqrt(spd: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, q = np.linalg.eigh(0.5 * (spd + spd.T))
    if w[0] <= 0:
        raise DecompositionError("expected a positive definite restriction of -B")
    return q @ np.diag(w**-0.5) @ q.T, q @ np.diag(w**0.5) @ q.T


def _cluster(sorted_vals: np.ndarray, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
    clusters: list[list[int]] = []
    for idx, v in enumerate(sorted_vals):
        if clusters and v - sorted_vals[clusters[-1][-1]] <= rtol * max(
            1.0, abs(v), abs(sorted_vals[clusters[-1][-1]])
        ):
            clusters[-1].append(idx)
        else:
            clusters.append([idx])
    return clusters


def simple_ideals(L: LieAlgebra, seed: int = 0) -> Decomposition:
    """Split a compact-type algebra into its center and simple ideals.

    Deterministic for a fixed seed.  Raises DecompositionError if generic
    draws keep failing, which signals numerically degenerate input.
    """
    report = compact_type_check(L)
    if not report.is_compact_type:
        raise NotCompactTypeError(report.reason)
    z = center(L)
    der = derived_subalgebra(L)
    if der.dim == 0:
        return Decomposition(center=z, ideals=())

    comm = commutant_basis(L, der)
    k = len(comm)
    neg_b = -killing_form(L).matrix
    kd = der.basis.T @ neg_b @ der.basis
    kd_inv_sqrt, kd_sqrt = _inv_sqrt_and_sqrt(kd)

    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(L.structure_tensor))))
    last_problem = "no attempts made"
    for _ in range(MAX_RETRIES):
        weights = rng.standard_normal(k)
        m = sum(w * c.matrix for w, c in zip(weights, comm))
        # Commutant elements are -B-self-adjoint, so this conjugate is symmetric.
        sym = kd_sqrt @ m @ kd_inv_sqrt
        evals, evecs = np.linalg.eigh(0.5 * (sym + sym.T))
        clusters = _cluster(evals)
        if len(clusters) != k:
            last_problem = f"{len(clusters)} eigenvalue clusters for commutant dimension {k}"
            continue

        factors = []
        ok = True
        for idx_list in clusters:
            block = kd_inv_sqrt @ evecs[:, idx_list]
            q, _ = np.linalg.qr(block)
            ideal = Subspace(der.basis @ q)
            if _check_bracket_closed(L, ideal, DEFAULT_TOL) > 1e-7 * scale:
                ok = False
                last_problem = "candidate ideal is not bracket-closed"
                break
            factors.append(ideal)
        if not ok:
            continue
        worst_cross = 0.0
        for a in range(len(factors)):
            for b in range(a + 1, len(factors)):
                for u in factors[a].basis.T:
                    for v in factors[b].basis.T:
                        worst_cross = max(
                            worst_cross, float(np.linalg.norm(bracket(L, u, v)))
                        )
        if worst_cross > 1e-7 * scale:
            last_problem = f"ideals fail to commute (residual {worst_cross:.2e})"
            continue

        ideals = tuple(
            IdealFactor(sub, root_fingerprint(L, sub, seed)) for sub in factors
        )
        return Decomposition(center=z, ideals=ideals)
    raise DecompositionError(f"splitting failed after {MAX_RETRIES} draws: {last_problem}")


def cartan_rank(L: LieAlgebra, ideal: Subspace, seed: int = 0, trials: int = 4) -> int:
    """Minimum centralizer dimension of random ideal elements.

    Non-generic draws only overestimate the rank, so the minimum over a few
    trials is the rank of the compact simple ideal.
    """
    rng = np.random.default_rng(seed)
    best = ideal.dim
    for _ in range(trials):
        x = ideal.basis @ rng.standard_normal(ideal.dim)
        a = _ad_restricted(L, x, ideal)
        best = min(best, nullspace(a, L.dim).shape[1])
    return best


def _generic_centralizer(
    L: LieAlgebra, ideal: Subspace, rank: int, rng: np.random.Generator
) -> np.ndarray | None:
    """Ideal-frame coordinates of a Cartan subalgebra, or None for a bad draw."""
    x = ideal.basis @ rng.standard_normal(ideal.dim)
    cart_coords = nullspace(_ad_restricted(L, x, ideal), L.dim)
    if cart_coords.shape[1] != rank:
        return None
    ambient = ideal.basis @ cart_coords
    pairwise = max(
        float(np.linalg.norm(bracket(L, ambient[:, a], ambient[:, b])))
        for a in range(rank)
        for b in range(rank)
    )
    if pairwise > 1e-7 * max(1.0, float(np.max(np.abs(L.structure_tensor)))):
        return None
    return cart_coords


def cartan_subalgebra(L: LieAlgebra, ideal: Subspace, seed: int = 0) -> Subspace:
    """A maximal abelian subalgebra of a compact simple ideal."""
    rank = cartan_rank(L, ideal, seed)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        cart_coords = _generic_centralizer(L, ideal, rank, rng)
        if cart_coords is not None:
            return Subspace(ideal.basis @ cart_coords)
    raise DecompositionError(f"no generic centralizer found in {MAX_RETRIES} draws")


def root_fingerprint(L: LieAlgebra, ideal: Subspace, seed: int = 0) -> Fingerprint:
    """Fingerprint a compact simple ideal by its root-length profile.

    A Cartan subalgebra is found as the centralizer of a generic element.
    Working in coordinates orthonormal for -B, a generic Cartan element t
    acts on the complement as a skew matrix whose square splits it into
    2-dim root planes; the rotation rates of the Cartan basis on each plane
    are the root functional's coordinates.  Profiles collect both signs of
    each root, normalized so the smallest squared length is 1.
    """
    d = ideal.dim
    rank = cartan_rank(L, ideal, seed)
    if rank == d:
        raise ValueError("subspace is abelian, not a simple ideal")

    neg_b = -killing_form(L).matrix
    ki = ideal.basis.T @ neg_b @ ideal.basis
    ki_inv_sqrt, ki_sqrt = _inv_sqrt_and_sqrt(ki)

    def frame_op(x: np.ndarray) -> np.ndarray:
        # Restriction of ad(x) to the ideal, in -B-orthonormal coordinates.
        a = _ad_restricted(L, x, ideal)
        a = ki_sqrt @ a @ ki_inv_sqrt
        return 0.5 * (a - a.T)

    rng = np.random.default_rng(seed)
    last_problem = "no attempts made"
    for _ in range(MAX_RETRIES):
        cart_coords = _generic_centralizer(L, ideal, rank, rng)
        if cart_coords is None:
            last_problem = "centralizer draw was not generic"
            continue
        cartan_ambient = ideal.basis @ cart_coords

        # -B-orthonormal Cartan basis h_1..h_r, so the dual metric is Euclidean.
        kt = cartan_ambient.T @ neg_b @ cartan_ambient
        kt_inv_sqrt, _ = _inv_sqrt_and_sqrt(kt)
        h = cartan_ambient @ kt_inv_sqrt

        # Orthogonal complement of the Cartan inside the -B-orthonormal frame.
        cart_frame = ki_sqrt @ cart_coords
        q, _ = np.linalg.qr(cart_frame)
        full, _ = np.linalg.qr(np.column_stack([q, np.eye(d)]))
        comp = full[:, rank:]

        t = h @ rng.standard_normal(rank)
        rt = comp.T @ frame_op(t) @ comp
        evals, evecs = np.linalg.eigh(rt @ rt)  # eigenvalues are -theta^2
        clusters = _cluster(evals)
        if any(len(c) != 2 for c in clusters):
            last_problem = "root planes did not split into 2-dim pieces"
            continue
        top = rank_tolerance(np.abs(evals)[np.argsort(-np.abs(evals))], L.dim)
        if float(np.max(evals)) > -top:
            last_problem = "Cartan draw had a vanishing rotation rate"
            continue

        rh = [comp.T @ frame_op(h[:, j]) @ comp for j in range(rank)]
        lengths = []
        ok = True
        for idx_list in clusters:
            p1, p2 = evecs[:, idx_list[0]], evecs[:, idx_list[1]]
            if float(p2 @ rt @ p1) < 0.0:
                p2 = -p2
            # the plane must be genuinely rotated inside itself, not mapped away
            if float(np.linalg.norm(rt @ p1 - (p2 @ rt @ p1) * p2)) > 1e-6:
                ok = False
                last_problem = "plane is not invariant under the Cartan action"
                break
            alpha = np.array([float(p2 @ rj @ p1) for rj in rh])
            lengths.append(float(alpha @ alpha))
        if not ok:
            continue

        profile = np.repeat(np.sort(np.array(lengths) / min(lengths)), 2)
        profile = tuple(float(v) for v in np.round(profile, PROFILE_DECIMALS))
        return Fingerprint(dim=d, rank=rank, root_profile=profile)
    raise DecompositionError(f"plane splitting failed after {MAX_RETRIES} draws: {last_problem}")


def group_by_isomorphism(dec: Decomposition) -> Decomposition:
    """Partition ideals into classes of equal fingerprint, deterministically ordered."""
    groups: dict[Fingerprint, list[int]] = {}
    for idx, factor in enumerate(dec.ideals):
        groups.setdefault(factor.fingerprint, []).append(idx)
    ordered = sorted(groups.items(), key=lambda kv: (kv[0].dim, kv[0].rank, kv[0].root_profile))
    return replace(dec, classes=tuple(tuple(sorted(idxs)) for _, idxs in ordered))


def decompose(L: LieAlgebra, seed: int = 0) -> Decomposition:
    """Full splitting with isomorphism classes filled in."""
    return group_by_isomorphism(simple_ideals(L, seed))
