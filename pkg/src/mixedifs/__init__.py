"""Graph-directed iterated function systems on mixed real/complex/p-adic
spaces: exact p-adic and quadratic-field arithmetic, singular value
functions, affinity-dimension solvers, attractor box covers, and
deterministic renderers."""

from .algebraic import QuadraticNumber, parse_quadratic, sqrt_from_embedding
from .attractor import (
    BoxCover,
    ExactEmbedder,
    PointSetPair,
    box_cells,
    box_count,
    box_dim_estimate,
    cell_set,
    dual_iterate,
    iterate_cover,
    overlap_fraction,
    standard_seeds,
    tiling_cover_check,
)
from .dimension import (
    DimensionReport,
    HypothesisViolation,
    PartialSumProbe,
    affinity_dim_spectral,
    affinity_dim_uniform,
    analyze,
    hausdorff_bounds,
    lower_affinity_dim_spectral,
    lower_affinity_dim_uniform,
    partial_sum_bracket,
    partial_sum_probe,
)
from .gifs import (
    FIXTURES,
    GifsEdge,
    GifsGraph,
    PathSlice,
    SpecFormatError,
    adjacency_matrix,
    enumerate_paths,
    example_boundary_full,
    example_boundary_reduced,
    example_main,
    is_strongly_connected,
    parse_spec,
    path_affine,
    path_linear,
    serialize_spec,
    spectral_radius,
    uniform_linear,
)
from .padic import (
    DEFAULT_PRECISION,
    PadicNumber,
    cantor_embed,
    from_rational,
    hensel_lift,
    is_prime,
    padic_zero,
    parse_digit_string,
)
from .render import ImageSpec, emit_dot, render_cover, render_svg
from .space import (
    AffineMap,
    Box,
    DiagonalMap,
    Point,
    SpaceSignature,
    box_contains,
    diameter,
    distance,
    haar_measure,
    zero_point,
)
from .svf import phi, psi

__version__ = "0.1.0"
