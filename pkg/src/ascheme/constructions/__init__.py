"""Named builders for the schemes and graphs studied in this package."""

from .bilinear import (
    bp_distance3,
    bp_graph,
    bp_z4,
    build_bilinear_forms,
    build_brouwer_pasechnik,
)
from .gq import GQ22, build_gq22, build_sylvester, check_gq22
from .linear import (
    AG28_FUSION,
    PG24Partition,
    build_ag28_scheme,
    build_cyclotomic,
    build_decaen_vandam,
    build_folded_halved_cube,
    build_hamming,
    build_polhill_product,
    build_translation_scheme,
    fused_scheme,
    no_three_collinear,
    pg24_partition,
    projective_points,
)
from .small import (
    build_complete,
    build_knn_minus_matching,
    build_latin_square_scheme,
    build_lattice_scheme,
    build_wreath,
    build_wreath_family,
    mols_from_field,
)
