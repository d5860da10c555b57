"""Antipodal-free sphere covers and their mod-2 homology certificates."""

from .checks import TheoremCheck, min_vertices, q_of, q_table, run_check
from .covers import (
    Band,
    Cap,
    Cover,
    LatitudeAbove,
    LatitudeBelow,
    SampleReport,
    Union,
    cap_cover,
    empirical_nerve,
    lift_chain,
    lift_cover,
    load_cover,
    membership,
    regular_simplex_vertices,
    sample_sphere,
    save_cover,
    verify_cover,
)
from .deleted_square import CWComplexGF2, deleted_square, orbit_complex, swap
from .homology import (
    BettiProfile,
    FreeFacetReport,
    GF2Matrix,
    betti_profile,
    boundary_matrix,
    free_facet_report,
    gf2_rank,
    top_homology_vanishes,
)
from .simplicial import (
    SimplicialComplex,
    are_disjoint,
    face,
    facets_of,
    skeleton_complex,
)

__version__ = "0.1.0"

__all__ = [
    "Band",
    "BettiProfile",
    "Cap",
    "Cover",
    "CWComplexGF2",
    "FreeFacetReport",
    "GF2Matrix",
    "LatitudeAbove",
    "LatitudeBelow",
    "SampleReport",
    "SimplicialComplex",
    "TheoremCheck",
    "Union",
    "are_disjoint",
    "betti_profile",
    "boundary_matrix",
    "cap_cover",
    "deleted_square",
    "empirical_nerve",
    "face",
    "facets_of",
    "free_facet_report",
    "gf2_rank",
    "lift_chain",
    "lift_cover",
    "load_cover",
    "membership",
    "min_vertices",
    "orbit_complex",
    "q_of",
    "q_table",
    "regular_simplex_vertices",
    "run_check",
    "sample_sphere",
    "save_cover",
    "skeleton_complex",
    "swap",
    "top_homology_vanishes",
    "verify_cover",
]
