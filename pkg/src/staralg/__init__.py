"""Exact computations with finite-dimensional *-algebras over ordered rings."""
__version__ = "0.1.0"

from staralg.algebra import (  # noqa: E402
    Algebra,
    direct_sum,
    function_points,
    grassmann,
    matrix_algebra,
    matrix_over,
    quotient_by_star_ideal,
    validate_presentation,
    zero_mult,
)
from staralg.gns import Representation, gns_construct, kernel_of  # noqa: E402
from staralg.ideals import StarIdeal, closure, enumerate_closed_lattice, jmin  # noqa: E402
from staralg.kernels import BACKEND  # noqa: E402
from staralg.morita import (  # noqa: E402
    InnerProductBimodule,
    diff_invariants,
    phi_map,
    projection_bimodule,
    rieffel_induce,
    std_bimodule,
    verify_equivalence,
)
from staralg.positivity import LinearFunctional, is_positive_functional, psd_check  # noqa: E402

__all__ = [
    "__version__",
    "BACKEND",
    "Algebra",
    "direct_sum",
    "function_points",
    "grassmann",
    "matrix_algebra",
    "matrix_over",
    "quotient_by_star_ideal",
    "validate_presentation",
    "zero_mult",
    "Representation",
    "gns_construct",
    "kernel_of",
    "StarIdeal",
    "closure",
    "enumerate_closed_lattice",
    "jmin",
    "InnerProductBimodule",
    "diff_invariants",
    "phi_map",
    "projection_bimodule",
    "rieffel_induce",
    "std_bimodule",
    "verify_equivalence",
    "LinearFunctional",
    "is_positive_functional",
    "psd_check",
]
