"""Symmetric association schemes: verification, spectra, fusions, spreads and quotients."""

from __future__ import annotations

from .errors import (
    ColorMatrixError,
    DisconnectedGraphError,
    IrrationalSpectrumError,
    PreconditionError,
    SchemeError,
    TheoremFalsified,
)
from .exactmat import RatMatrix, char_poly, integer_roots
from .fusion import (
    amorphic_check,
    common_fission,
    fuse,
    is_fusion_scheme,
    make_partition,
    parse_blocks,
    partitions,
    theorem_main_check,
    verify_commuting_decomposition,
)
from .gf import Field, gf
from .graph import Graph
from .quotient import (
    lattice_idempotent_count,
    lattice_identity_holds,
    proposition_reports,
    quotient_relation,
    quotient_scheme,
)
from .scheme import (
    ColorMatrix,
    Scheme,
    Spectrum,
    Violation,
    distance_colors,
    drg_array,
    scheme_verify,
    spectrum,
    verified,
)
from .spreads import Spread, find_clique, find_spread, fission_by_spreads, is_square_spread, remove_spread
from .srg import Kind, SrgParams, SrgType, classify_type, is_ls_inclusive, is_nls_inclusive, srg_params

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
