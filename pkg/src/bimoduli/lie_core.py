"""Lie algebras given by structure constants, and the linear algebra on them.

A Lie algebra of dimension n is stored as a sparse bracket table on basis
pairs (i, j) with i < j; the value [e_j, e_i] = -[e_i, e_j] is derived on
access and never stored, so the table cannot become inconsistent.  All
vectors are coordinate vectors with respect to that basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Absolute tolerance on residual entries (bracket residuals, skew-adjointness,
# Jacobi sums).  Catalog structure constants are O(1), so this is far below
# signal at desk scale (n <= 32).
DEFAULT_TOL = 1e-9
TOL_JACOBI = 1e-9

# Rank decisions use singular values: sigma is zero iff sigma <= RANK_RTOL * sigma_max * n.
RANK_RTOL = 1e-9


class NotPositiveDefiniteError(ValueError):
    """A matrix that must be positive definite is not."""


def rank_tolerance(singular_values: np.ndarray, n: int) -> float:
    if singular_values.size == 0:
        return 0.0
    return RANK_RTOL * float(singular_values[0]) * n


def nullspace(a: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the nullspace of ``a``.

    ``n`` is the ambient algebra dimension, which sets the rank-decision
    scale; it need not match a shape of ``a``.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    cols = a.shape[1]
    if a.size == 0 or not np.any(a):
        return np.eye(cols)
    _, s, vt = np.linalg.svd(a)
    rank = int(np.sum(s > rank_tolerance(s, n)))
    return np.ascontiguousarray(vt[rank:].T)


def column_space(a: np.ndarray, n: int) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0 or not np.any(a):
        return np.zeros((a.shape[0], 0))
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > rank_tolerance(s, n)))
    return np.ascontiguousarray(u[:, :rank])


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LieAlgebra:
    """Structure-constant presentation of a real Lie algebra.

    ``brackets`` maps ordered pairs (i, j), i < j, to the expansion of
    [e_i, e_j] as a sequence of (k, coefficient) terms.
    """

    name: str
    dim: int
    brackets: dict

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        table = {}
        for (i, j), terms in sorted(self.brackets.items()):
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bad bracket pair ({i}, {j}) for dim {self.dim}")
            clean = []
            for k, c in terms:
                k = int(k)
                c = float(c)
                if not (0 <= k < self.dim):
                    raise ValueError(f"bad target index {k} in bracket ({i}, {j})")
                if not math.isfinite(c):
                    raise ValueError(f"non-finite coefficient in bracket ({i}, {j})")
                if c != 0.0:
                    clean.append((k, c))
            if clean:
                table[(int(i), int(j))] = tuple(clean)
        object.__setattr__(self, "brackets", table)

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """Dense tensor T with [e_i, e_j] = sum_k T[i, j, k] e_k."""
        t = np.zeros((self.dim, self.dim, self.dim))
        for (i, j), terms in self.brackets.items():
            for k, c in terms:
                t[i, j, k] = c
                t[j, i, k] = -c
        return _readonly(t)

    @cached_property
    def ad_tensor(self) -> np.ndarray:
        """Stack of adjoint matrices: ad_tensor[i] is the matrix of ad(e_i)."""
        return _readonly(np.swapaxes(self.structure_tensor, 1, 2))

    def is_abelian(self, tol: float = DEFAULT_TOL) -> bool:
        t = self.structure_tensor
        return bool(t.size == 0 or float(np.max(np.abs(t))) <= tol)


@dataclass(frozen=True)
class SymmetricForm:
    """Symmetric bilinear form, stored as the upper triangle of its matrix."""

    n: int
    upper: np.ndarray  # length n*(n+1)//2, row-major upper triangle

    def __post_init__(self):
        upper = np.asarray(self.upper, dtype=float)
        if upper.shape != (self.n * (self.n + 1) // 2,):
            raise ValueError("upper triangle has wrong length")
        if not np.all(np.isfinite(upper)):
            raise ValueError("non-finite form entries")
        object.__setattr__(self, "upper", _readonly(upper))

    @classmethod
    def from_matrix(cls, a: np.ndarray) -> "SymmetricForm":
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("form matrix must be square")
        sym = 0.5 * (a + a.T)
        return cls(n=n, upper=sym[np.triu_indices(n)])

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n)
        m[iu] = self.upper
        m.T[iu] = self.upper
        return _readonly(m)

    def value(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(np.asarray(x) @ self.matrix @ np.asarray(y))


@dataclass(frozen=True)
class Metric:
    """Positive definite symmetric form (an inner product on the algebra)."""

    form: SymmetricForm

    def __post_init__(self):
        evals = np.linalg.eigvalsh(self.form.matrix)
        floor = 1e-12 * max(1.0, float(np.max(np.abs(evals))) if evals.size else 1.0)
        if evals.size == 0 or float(evals[0]) <= floor:
            raise NotPositiveDefiniteError(
                f"form is not positive definite (min eigenvalue {evals[0] if evals.size else 'n/a'})"
            )

    @classmethod
    def from_matrix(cls, a: np.ndarray) -> "Metric":
        return cls(SymmetricForm.from_matrix(a))

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def matrix(self) -> np.ndarray:
        return self.form.matrix

    def scaled(self, lam: float) -> "Metric":
        return Metric.from_matrix(lam * self.matrix)


@dataclass(frozen=True)
class LinearMap:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or not np.all(np.isfinite(m)):
            raise ValueError("linear map needs a finite 2-d matrix")
        object.__setattr__(self, "matrix", _readonly(m))


@dataclass(frozen=True)
class Subspace:
    """Subspace given by a matrix whose columns are Euclidean-orthonormal."""

    basis: np.ndarray  # n x d

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2:
            raise ValueError("subspace basis must be a 2-d array")
        gram = b.T @ b
        if gram.size and float(np.max(np.abs(gram - np.eye(b.shape[1])))) > 1e-8:
            raise ValueError("subspace basis columns are not orthonormal")
        object.__setattr__(self, "basis", _readonly(b))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project_coeff(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of the orthogonal projection of ``x`` in this basis."""
        return self.basis.T @ np.asarray(x, dtype=float)

    def contains(self, x: np.ndarray, tol: float = 1e-8) -> bool:
        x = np.asarray(x, dtype=float)
        resid = x - self.basis @ (self.basis.T @ x)
        return float(np.linalg.norm(resid)) <= tol * max(1.0, float(np.linalg.norm(x)))


def _check_vector(L: LieAlgebra, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (L.dim,):
        raise ValueError(f"expected a vector of length {L.dim}, got shape {x.shape}")
    return x


def bracket(L: LieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y], extended bilinearly from the structure constants."""
    x = _check_vector(L, x)
    y = _check_vector(L, y)
    return np.einsum("ijk,i,j->k", L.structure_tensor, x, y)


def ad_matrix(L: LieAlgebra, x: np.ndarray) -> LinearMap:
    """Matrix of ad(x): column j is [x, e_j]."""
    x = _check_vector(L, x)
    return LinearMap(np.einsum("ijk,i->kj", L.structure_tensor, x))


def validate_jacobi(L: LieAlgebra, tol: float = TOL_JACOBI) -> list[tuple[int, int, int]]:
    """Triples (i, j, k), i < j < k, whose cyclic bracket sum exceeds ``tol``.

    Triples with a repeated index vanish identically by antisymmetry, so the
    strictly increasing ones are exhaustive.
    """
    t = L.structure_tensor
    p = np.einsum("ijm,mkl->ijkl", t, t)
    cyc = p + p.transpose(1, 2, 0, 3) + p.transpose(2, 0, 1, 3)
    resid = np.max(np.abs(cyc), axis=3)
    n = L.dim
    return [
        (i, j, k)
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(j + 1, n)
        if resid[i, j, k] > tol
    ]


def killing_form(L: LieAlgebra) -> SymmetricForm:
    """B(e_i, e_j) = trace(ad(e_i) ad(e_j))."""
    t = L.structure_tensor
    b = np.einsum("iba,jab->ij", t, t)
    return SymmetricForm.from_matrix(b)


def skew_adjoint_residual(L: LieAlgebra, form_matrix: np.ndarray) -> float:
    """max over basis triples of |<[e_i,e_j],e_k> + <e_j,[e_i,e_k]>|."""
    g = np.asarray(form_matrix, dtype=float)
    if g.shape != (L.dim, L.dim):
        raise ValueError("form matrix dimension does not match the algebra")
    a = np.einsum("ijm,mk->ijk", L.structure_tensor, g)
    return float(np.max(np.abs(a + a.transpose(0, 2, 1)))) if a.size else 0.0


def is_skew_adjoint_all(L: LieAlgebra, metric: Metric, tol: float = DEFAULT_TOL) -> bool:
    """Whether every ad(x) is skew-adjoint for the metric.

    This is the membership test for the cone of bi-invariant inner products.
    """
    return skew_adjoint_residual(L, metric.matrix) <= tol


def center(L: LieAlgebra) -> Subspace:
    """Nullspace of x -> ad(x), i.e. everything that commutes with the algebra."""
    stacked = L.ad_tensor.reshape(L.dim, -1).T  # (n^2, n), column i = vec ad(e_i)
    return Subspace(nullspace(stacked, L.dim))


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    """Span of all basis brackets [e_i, e_j]."""
    n = L.dim
    pairs = [L.structure_tensor[i, j] for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return Subspace(np.zeros((n, 0)))
    return Subspace(column_space(np.column_stack(pairs), n))


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Direct sum with all cross brackets zero."""
    table: dict = {k: list(v) for k, v in a.brackets.items()}
    off = a.dim
    for (i, j), terms in b.brackets.items():
        table[(i + off, j + off)] = [(k + off, c) for k, c in terms]
    return LieAlgebra(name or f"{a.name}+{b.name}", a.dim + b.dim, table)


def change_basis(L: LieAlgebra, a: np.ndarray, name: str | None = None) -> LieAlgebra:
    """Same algebra in the basis whose vectors are the columns of ``a``."""
    a = np.asarray(a, dtype=float)
    if a.shape != (L.dim, L.dim):
        raise ValueError("change-of-basis matrix has wrong shape")
    ainv = np.linalg.inv(a)
    t = np.einsum("ia,jb,ijk,ck->abc", a, a, L.structure_tensor, ainv)
    table: dict = {}
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            terms = [(k, t[i, j, k]) for k in range(n) if t[i, j, k] != 0.0]
            if terms:
                table[(i, j)] = terms
    return LieAlgebra(name or f"{L.name}~", n, table)
