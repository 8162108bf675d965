"""Bi-invariant metrics on Lie algebras given by structure constants.

Decides whether a bi-invariant metric exists, splits the algebra into its
center and simple ideals, puts every bi-invariant metric into canonical
coordinates, charts the moduli spaces of metrics up to isometry and up to
conformal equivalence, and evaluates the associated curvature quantities.
"""

from .catalog import CatalogEntry, builtin, entries, names
from .curvature import (
    CurvatureReport,
    DegeneratePlaneError,
    kappa,
    positivity_probe,
    ricci_form,
    scalar_curvature,
    sectional,
)
from .decompose import (
    CompactTypeReport,
    Decomposition,
    DecompositionError,
    Fingerprint,
    IdealFactor,
    NotCompactTypeError,
    cartan_rank,
    cartan_subalgebra,
    commutant_basis,
    compact_type_check,
    decompose,
    group_by_isomorphism,
    root_fingerprint,
    simple_ideals,
)
from .lie_core import (
    DEFAULT_TOL,
    LieAlgebra,
    LinearMap,
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
from .metrics import (
    BiInvariantCoordinates,
    ClassCoordinates,
    ConformalChart,
    ConformalVerdict,
    ModuliChart,
    ModuliReport,
    NotBiInvariantError,
    ProportionalityError,
    SpaceDescription,
    SpaceFactor,
    assemble_metric,
    bi_chart,
    canonicalize,
    chart_alphas,
    conformally_equivalent,
    ebi_chart,
    invariant_form_space,
    is_biinvariant_metric,
    isometric,
    metric_coordinates,
    moduli_description,
    random_biinvariant_metric,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
