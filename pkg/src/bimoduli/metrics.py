"""Canonical coordinates for bi-invariant metrics and the moduli charts.

Every bi-invariant inner product restricts to a positive multiple alpha_i of
the negated Killing form on each simple ideal, and any two metrics are
isometric exactly when their per-isomorphism-class alpha multisets agree.
Sorting within classes is therefore a canonical form, and log-gap
coordinates chart each class's symmetric-product factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .decompose import (
    Decomposition,
    Fingerprint,
    compact_type_check,
    decompose,
    group_by_isomorphism,
)
from .lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    Metric,
    SymmetricForm,
    is_skew_adjoint_all,
    killing_form,
    nullspace,
)

TOL_PROP = 1e-8  # proportionality of a metric block to the ideal's Killing block
TOL_EQ = 1e-8  # relative tolerance for alpha comparisons


class NotBiInvariantError(ValueError):
    """A metric that must be bi-invariant is not."""


class ProportionalityError(RuntimeError):
    """A metric block is not proportional to its ideal's Killing block."""


# ---------------------------------------------------------------------------
# Space descriptions


@dataclass(frozen=True)
class SpaceFactor:
    """One factor of a moduli space: kind is "halfline", "symprod" or "sphere".

    ``size`` is the class size m for symprod, the total ideal count K for
    sphere; ``sym`` lists the permuted block sizes of a sphere quotient.
    """

    kind: str
    size: int
    sym: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        if self.kind == "halfline":
            return 1
        if self.kind == "symprod":
            return self.size
        return self.size - 1

    def render(self) -> str:
        if self.kind == "halfline":
            return "ℝ⁺"
        if self.kind == "symprod":
            return f"SP^{self.size}(ℝ)"
        nontrivial = [m for m in self.sym if m > 1]
        base = f"𝕊^{self.size - 1}₊"
        if not nontrivial:
            return base
        if len(nontrivial) == 1:
            return f"{base}/S_{nontrivial[0]}"
        return base + "/(" + "×".join(f"S_{m}" for m in nontrivial) + ")"

    def homeomorphic(self) -> str | None:
        if self.kind == "halfline":
            return None
        if self.kind == "symprod":
            return "ℝ⁺×ℝ" if self.size == 2 else f"ℝ×(ℝ⁺)^{self.size - 1}"
        nontrivial = [m for m in self.sym if m > 1]
        if not nontrivial:
            return f"ℝ^{self.size - 1}" if self.size > 2 else "ℝ"
        if self.size == 2 and nontrivial == [2]:
            return "ℝ⁺"
        return None


@dataclass(frozen=True)
class SpaceDescription:
    factors: tuple[SpaceFactor, ...]

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def is_point(self) -> bool:
        return not self.factors

    def render(self) -> str:
        if not self.factors:
            return "point"
        return " × ".join(f.render() for f in self.factors)

    def render_homeomorphic(self) -> str | None:
        """A plainer homeomorphic model, when one is worth printing."""
        if not self.factors:
            return None
        parts = [f.homeomorphic() or f.render() for f in self.factors]
        joined = " × ".join(parts)
        return None if joined == self.render() else joined


def _point() -> SpaceDescription:
    return SpaceDescription(())


def bi_space_description(class_sizes: tuple[int, ...]) -> SpaceDescription:
    factors = tuple(
        SpaceFactor("halfline", 1) if m == 1 else SpaceFactor("symprod", m)
        for m in class_sizes
    )
    return SpaceDescription(factors)


def ebi_space_description(class_sizes: tuple[int, ...]) -> SpaceDescription:
    total = sum(class_sizes)
    if total <= 1:
        return _point()
    return SpaceDescription((SpaceFactor("sphere", total, tuple(class_sizes)),))


# ---------------------------------------------------------------------------
# Coordinates and charts


class ClassCoordinates(NamedTuple):
    fingerprint: Fingerprint
    alphas: tuple[float, ...]


@dataclass(frozen=True)
class BiInvariantCoordinates:
    """Per-isomorphism-class multisets of Killing-multiple coefficients.

    The center block of the metric contributes nothing to the moduli space,
    so only its dimension is kept.
    """

    class_entries: tuple[ClassCoordinates, ...]
    center_dim: int

    @property
    def flat(self) -> tuple[float, ...]:
        return tuple(a for entry in self.class_entries for a in entry.alphas)

    @property
    def is_canonical(self) -> bool:
        return all(
            tuple(sorted(entry.alphas)) == entry.alphas for entry in self.class_entries
        )


@dataclass(frozen=True)
class ScalarFactor:
    log_alpha: float


@dataclass(frozen=True)
class SymmetricProductFactor:
    base: float
    gaps: tuple[float, ...]


@dataclass(frozen=True)
class ModuliChart:
    factors: tuple[ScalarFactor | SymmetricProductFactor, ...]
    space: SpaceDescription

    def coordinates(self) -> tuple[float, ...]:
        out: list[float] = []
        for f in self.factors:
            if isinstance(f, ScalarFactor):
                out.append(f.log_alpha)
            else:
                out.append(f.base)
                out.extend(f.gaps)
        return tuple(out)


@dataclass(frozen=True)
class ConformalChart:
    unit_coordinates: tuple[float, ...]
    space: SpaceDescription


@dataclass(frozen=True)
class ModuliReport:
    admits_metric: bool
    message: str | None
    bi: SpaceDescription | None
    ebi: SpaceDescription | None
    contractible: bool | None


@dataclass(frozen=True)
class ConformalVerdict:
    equivalent: bool
    scale: float | None


# ---------------------------------------------------------------------------
# Operations


def invariant_form_space(L: LieAlgebra) -> list[SymmetricForm]:
    """Basis of symmetric forms S with S([x,y],z) = -S(y,[x,z]).

    For a compact-type algebra with k simple ideals and center dimension m
    the dimension is k + m(m+1)/2.
    """
    n = L.dim
    t = L.structure_tensor
    iu, ju = np.triu_indices(n)
    columns = []
    for p, q in zip(iu, ju):
        e = np.zeros((n, n))
        e[p, q] = 1.0
        e[q, p] = 1.0
        te = np.einsum("ijm,mk->ijk", t, e)
        columns.append((te + te.transpose(0, 2, 1)).ravel())
    null = nullspace(np.column_stack(columns), n)
    forms = []
    for col in null.T:
        m = np.zeros((n, n))
        m[iu, ju] = col
        m.T[iu, ju] = col
        forms.append(SymmetricForm.from_matrix(m))
    return forms


def is_biinvariant_metric(L: LieAlgebra, metric: Metric, tol: float = DEFAULT_TOL) -> bool:
    return is_skew_adjoint_all(L, metric, tol)


def _require_biinvariant(L: LieAlgebra, metric: Metric, tol: float = DEFAULT_TOL) -> None:
    if metric.n != L.dim:
        raise ValueError("metric dimension does not match the algebra")
    if not is_biinvariant_metric(L, metric, tol):
        raise NotBiInvariantError(f"metric on {L.name} is not bi-invariant")


def assemble_metric(
    L: LieAlgebra,
    dec: Decomposition,
    alphas: list[float] | tuple[float, ...] | np.ndarray,
    center_block: np.ndarray | None = None,
) -> Metric:
    """Metric sum(alpha_i * (-B_i)) + center block, alphas in ideal order."""
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != (len(dec.ideals),):
        raise ValueError("need one coefficient per ideal")
    if np.any(alphas <= 0):
        raise ValueError("coefficients must be positive")
    blocks = [f.subspace.basis for f in dec.ideals]
    if dec.center.dim:
        blocks.append(dec.center.basis)
    q = np.column_stack(blocks) if blocks else np.zeros((L.dim, 0))
    neg_b = -killing_form(L).matrix
    diag = np.zeros((L.dim, L.dim))
    pos = 0
    for a, factor in zip(alphas, dec.ideals):
        d = factor.subspace.dim
        p = factor.subspace.basis
        diag[pos : pos + d, pos : pos + d] = a * (p.T @ neg_b @ p)
        pos += d
    if dec.center.dim:
        m = dec.center.dim
        if center_block is None:
            center_block = np.eye(m)
        center_block = np.asarray(center_block, dtype=float)
        if center_block.shape != (m, m):
            raise ValueError("center block has wrong shape")
        diag[pos : pos + m, pos : pos + m] = center_block
    qinv = np.linalg.inv(q)
    return Metric.from_matrix(qinv.T @ diag @ qinv)


def random_biinvariant_metric(L: LieAlgebra, dec: Decomposition, seed: int = 0) -> Metric:
    """Random point of the bi-invariant cone, log-uniform alphas in [0.1, 10]."""
    rng = np.random.default_rng(seed)
    alphas = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=len(dec.ideals)))
    center_block = None
    if dec.center.dim:
        m = dec.center.dim
        gauss = rng.standard_normal((m, m))
        q, _ = np.linalg.qr(gauss)
        scales = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=m))
        center_block = q @ np.diag(scales) @ q.T
    return assemble_metric(L, dec, alphas, center_block)


def _grouped(dec: Decomposition) -> Decomposition:
    return dec if dec.classes or not dec.ideals else group_by_isomorphism(dec)


def metric_coordinates(
    L: LieAlgebra, metric: Metric, dec: Decomposition, tol: float = DEFAULT_TOL
) -> BiInvariantCoordinates:
    """Read off the Killing multiple on each ideal and group by class."""
    _require_biinvariant(L, metric, tol)
    dec = _grouped(dec)
    g = metric.matrix
    neg_b = -killing_form(L).matrix
    per_ideal: list[float] = []
    for factor in dec.ideals:
        p = factor.subspace.basis
        mi = p.T @ g @ p
        ki = p.T @ neg_b @ p
        alpha = float(mi[0, 0] / ki[0, 0])
        resid = float(np.max(np.abs(mi - alpha * ki)))
        if resid > TOL_PROP * (1.0 + float(np.max(np.abs(mi)))):
            raise ProportionalityError(
                f"metric block on a dim-{p.shape[1]} ideal is not a Killing multiple "
                f"(residual {resid:.2e})"
            )
        per_ideal.append(alpha)
    entries = tuple(
        ClassCoordinates(
            dec.ideals[cls[0]].fingerprint, tuple(per_ideal[i] for i in cls)
        )
        for cls in dec.classes
    )
    return BiInvariantCoordinates(class_entries=entries, center_dim=dec.center.dim)


def canonicalize(coords: BiInvariantCoordinates) -> BiInvariantCoordinates:
    """Sort each class's multiset ascending; idempotent."""
    return BiInvariantCoordinates(
        class_entries=tuple(
            ClassCoordinates(entry.fingerprint, tuple(sorted(entry.alphas)))
            for entry in coords.class_entries
        ),
        center_dim=coords.center_dim,
    )


def bi_chart(coords: BiInvariantCoordinates) -> ModuliChart:
    """Log-gap chart: (log a_(1), log a_(2) - log a_(1), ...) per class.

    Gaps are non-negative exactly because the multiset is sorted; zero gaps
    sit on the orbifold locus where isomorphic factors carry equal weight.
    """
    if not coords.is_canonical:
        raise ValueError("coordinates must be canonicalized first")
    factors: list[ScalarFactor | SymmetricProductFactor] = []
    for entry in coords.class_entries:
        logs = [math.log(a) for a in entry.alphas]
        if len(logs) == 1:
            factors.append(ScalarFactor(logs[0]))
        else:
            gaps = tuple(b - a for a, b in zip(logs, logs[1:]))
            factors.append(SymmetricProductFactor(logs[0], gaps))
    sizes = tuple(len(e.alphas) for e in coords.class_entries)
    return ModuliChart(tuple(factors), bi_space_description(sizes))


def chart_alphas(chart: ModuliChart) -> tuple[tuple[float, ...], ...]:
    """Invert the log-gap chart back to sorted alpha multisets per class."""
    out = []
    for f in chart.factors:
        if isinstance(f, ScalarFactor):
            out.append((math.exp(f.log_alpha),))
        else:
            logs = np.cumsum([f.base, *f.gaps])
            out.append(tuple(math.exp(v) for v in logs))
    return tuple(out)


def ebi_chart(coords: BiInvariantCoordinates) -> ConformalChart:
    """Scale-free chart: the canonical alpha vector on the unit sphere."""
    if not coords.is_canonical:
        raise ValueError("coordinates must be canonicalized first")
    flat = np.asarray(coords.flat)
    sizes = tuple(len(e.alphas) for e in coords.class_entries)
    if flat.size == 0:
        return ConformalChart((), _point())
    unit = flat / float(np.linalg.norm(flat))
    return ConformalChart(tuple(float(v) for v in unit), ebi_space_description(sizes))


def _canonical_of(
    L: LieAlgebra,
    metric: Metric,
    dec: Decomposition | None,
    seed: int,
    tol: float,
) -> BiInvariantCoordinates:
    if dec is None:
        dec = decompose(L, seed)
    return canonicalize(metric_coordinates(L, metric, dec, tol))


def _alphas_match(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
    return len(a) == len(b) and all(
        abs(x - y) <= TOL_EQ * max(1.0, abs(x), abs(y)) for x, y in zip(a, b)
    )


def isometric(
    L1: LieAlgebra,
    M1: Metric,
    L2: LieAlgebra,
    M2: Metric,
    seed: int = 0,
    dec1: Decomposition | None = None,
    dec2: Decomposition | None = None,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Whether the metrics agree up to an algebra isomorphism.

    Decided on canonical forms: equal center dimensions, equal class
    fingerprints, and equal sorted alpha multisets class by class.
    """
    c1 = _canonical_of(L1, M1, dec1, seed, tol)
    c2 = _canonical_of(L2, M2, dec2, seed, tol)
    if c1.center_dim != c2.center_dim:
        return False
    if tuple(e.fingerprint for e in c1.class_entries) != tuple(
        e.fingerprint for e in c2.class_entries
    ):
        return False
    return all(
        _alphas_match(a.alphas, b.alphas)
        for a, b in zip(c1.class_entries, c2.class_entries)
    )


def conformally_equivalent(
    L1: LieAlgebra,
    M1: Metric,
    L2: LieAlgebra,
    M2: Metric,
    seed: int = 0,
    dec1: Decomposition | None = None,
    dec2: Decomposition | None = None,
    tol: float = DEFAULT_TOL,
) -> ConformalVerdict:
    """Equality of unit-sphere charts; the returned scale maps M2 onto M1."""
    c1 = _canonical_of(L1, M1, dec1, seed, tol)
    c2 = _canonical_of(L2, M2, dec2, seed, tol)
    if c1.center_dim != c2.center_dim:
        return ConformalVerdict(False, None)
    if tuple(e.fingerprint for e in c1.class_entries) != tuple(
        e.fingerprint for e in c2.class_entries
    ):
        return ConformalVerdict(False, None)
    f1 = np.asarray(c1.flat)
    f2 = np.asarray(c2.flat)
    if f1.size == 0:
        return ConformalVerdict(True, 1.0)
    u1 = f1 / np.linalg.norm(f1)
    u2 = f2 / np.linalg.norm(f2)
    if float(np.max(np.abs(u1 - u2))) > TOL_EQ:
        return ConformalVerdict(False, None)
    return ConformalVerdict(True, float(np.linalg.norm(f1) / np.linalg.norm(f2)))


def moduli_description(L: LieAlgebra, seed: int = 0) -> ModuliReport:
    """Run the pipeline with no metric and describe both moduli spaces."""
    report = compact_type_check(L)
    if not report.is_compact_type:
        return ModuliReport(
            admits_metric=False,
            message=f"no bi-invariant metric exists: {report.reason}",
            bi=None,
            ebi=None,
            contractible=None,
        )
    dec = decompose(L, seed)
    sizes = dec.class_sizes
    return ModuliReport(
        admits_metric=True,
        message=None,
        bi=bi_space_description(sizes),
        ebi=ebi_space_description(sizes),
        contractible=True,
    )
