"""Minimum-dimensional pseudo-Euclidean representations of switching classes.

Exact pipeline: build a Johnson or Hamming graph, switch it on a subset,
assign the two distance values, center the dissimilarity matrix and read
off the exact signature (p, q) — the smallest pseudo-Euclidean space
carrying the configuration.  A classification of the switching sets whose
characteristic vectors lie in the right idempotent subspace drives the
search for the minimum over the whole switching class, and a floating-point
realization layer turns the extremal cases into explicit point sets with
two (or, once doubled, three) distance values.
"""

from .exact import Matrix, Signature, gower_center, inertia, kernel_basis
from .graphs import (
    Graph,
    SrgParams,
    complement,
    delsarte_cliques,
    equitable_quotient,
    hamming,
    johnson,
    seidel_matrix,
    seidel_switch,
    srg_params,
)
from .jacobi import jacobi_eigh
from .realization import (
    PointConfiguration,
    cardinality_bound,
    distance_set,
    realize,
    sphericity_check,
)
from .spectral import (
    Dissimilarity,
    SrgIdempotents,
    dissimilarity_matrix,
    main_eigenvalue_analysis,
    s_matrix,
    signature_from_spectrum,
    srg_dimensionality,
    srg_idempotents,
    switched_eigenvalues,
)
from .switching import (
    AdmissibleFamily,
    SwitchReport,
    TableRow,
    brute_force_admissible,
    hamming_threshold,
    minimum_dimensionality,
    structural_admissible,
    switch_dimensionality,
)

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "Signature",
    "gower_center",
    "inertia",
    "kernel_basis",
    "Graph",
    "SrgParams",
    "complement",
    "delsarte_cliques",
    "equitable_quotient",
    "hamming",
    "johnson",
    "seidel_matrix",
    "seidel_switch",
    "srg_params",
    "jacobi_eigh",
    "PointConfiguration",
    "cardinality_bound",
    "distance_set",
    "realize",
    "sphericity_check",
    "Dissimilarity",
    "SrgIdempotents",
    "dissimilarity_matrix",
    "main_eigenvalue_analysis",
    "s_matrix",
    "signature_from_spectrum",
    "srg_dimensionality",
    "srg_idempotents",
    "switched_eigenvalues",
    "AdmissibleFamily",
    "SwitchReport",
    "TableRow",
    "brute_force_admissible",
    "hamming_threshold",
    "minimum_dimensionality",
    "structural_admissible",
    "switch_dimensionality",
]
