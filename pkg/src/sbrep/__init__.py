"""Exact representations of braid and singular braid groups."""

from .arith import GaussianRational, LaurentPoly, QuadExt, T, as_gaussian, sqrt_quad
from .catalog import (
    FAMILIES,
    Representation,
    build,
    burau,
    custom,
    f_rep,
    homog_mu,
    homog_rho,
    normalize_homog,
    phi_extension,
    sb2_classify,
    sb2_family,
    sb3_ext_dim2,
    sb3_ext_dim3,
    standard,
    tuba_wenzl_dim2,
    tuba_wenzl_dim3,
    wada,
)
from .irreducibility import (
    Verdict,
    audit,
    burnside_verdict,
    common_eigenvector_2x2,
    exhaustive_verdict,
    invariant_line_witness,
    mu3_predicate,
    restriction_verdict,
    rho3_local_predicate,
    sb2_paper_predicate,
)
from .linalg import Matrix, block_embed, eigen_2x2, mat_inverse, span_closure
from .presentations import bn_presentation, sbn_presentation, verify_rep

__version__ = "0.1.0"
