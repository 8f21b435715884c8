"""Exact counting of domino tilings (dimer covers) of rectangles and tori."""
from .asymptotics import catalan_constant, entropy_integral, finite_size_entropy
from .codec import TilingCode, decode, encode
from .errors import (
    DimerError,
    InexactDivision,
    InvalidBoundary,
    InvalidCode,
    InvalidDimensions,
    InvalidSignClass,
    PrecisionExhausted,
    SignCalibrationFailure,
    SizeLimitExceeded,
    ToleranceNotMet,
)
from .grid import GridSpec, Topology, build_grid, canonical_vertex_order
from .kasteleyn import SignClass, build_kasteleyn, count_rectangle_det, count_torus_det
from .linalg import GaussianInt, GaussianMatrix, det_exact
from .oracle import (
    BoundaryConfiguration,
    Matching,
    count_overtilings,
    count_with_boundary,
    enumerate_matchings,
    flip_connectivity,
    matching_signature,
    torus_typed_counts,
)
from .spectral import count_rectangle_spectral, count_torus_spectral

__version__ = "0.1.0"
