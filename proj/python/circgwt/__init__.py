"""Spline and e-spline wavelet filterbanks on circulant graphs."""

from circgwt._core import (
    CirculantGraph,
    Decomposition,
    FilterBank,
    Generator,
    InfeasibleFactorizationError,
    ProductGraph,
    SingularSystemError,
    adjacency,
    analysis_matrix,
    analyze,
    bandwidth,
    check_invertibility,
    circulant_projection_row,
    coarsen,
    decompose,
    default_pattern,
    fiedler_bipartition,
    invert,
    laplacian,
    lexicographic_circulant,
    make_bank,
    make_circulant,
    make_product,
    nearest_circulant,
    nearest_kron_circulant,
    nla_curve,
    product_adjacency,
    product_laplacian,
    product_spectrum,
    synthesize,
)

__all__ = [
    "CirculantGraph",
    "Decomposition",
    "FilterBank",
    "Generator",
    "InfeasibleFactorizationError",
    "ProductGraph",
    "SingularSystemError",
    "adjacency",
    "analysis_matrix",
    "analyze",
    "bandwidth",
    "check_invertibility",
    "circulant_projection_row",
    "coarsen",
    "decompose",
    "default_pattern",
    "fiedler_bipartition",
    "invert",
    "laplacian",
    "lexicographic_circulant",
    "make_bank",
    "make_circulant",
    "make_product",
    "nearest_circulant",
    "nearest_kron_circulant",
    "nla_curve",
    "product_adjacency",
    "product_laplacian",
    "product_spectrum",
    "synthesize",
]
