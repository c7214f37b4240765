from __future__ import annotations

import pytest

from ascheme.constructions import (
    build_bilinear_forms,
    build_brouwer_pasechnik,
    build_complete,
    build_cyclotomic,
    build_decaen_vandam,
    build_hamming,
    build_knn_minus_matching,
    build_latin_square_scheme,
    build_lattice_scheme,
    build_sylvester,
    build_wreath_family,
    fused_scheme,
    mols_from_field,
)


@pytest.fixture(scope="session")
def sylvester():
    return build_sylvester()


@pytest.fixture(scope="session")
def decaen_vandam():
    return build_decaen_vandam()


@pytest.fixture(scope="session")
def bp2():
    return build_brouwer_pasechnik(2)


@pytest.fixture(scope="session")
def bilinear2():
    return build_bilinear_forms(2)


@pytest.fixture(scope="session")
def clebsch_scheme():
    return build_cyclotomic(16, 3)


def build_small_corpus():
    """Named schemes with v <= 100, used by the property and oracle suites."""
    dv = build_decaen_vandam()
    return {
        "K5": build_complete(5),
        "H(3,3)": build_hamming(3, 3),
        "H(2,4)": build_hamming(2, 4),
        "lattice-5": build_lattice_scheme(5),
        "paley-9": build_cyclotomic(9, 2),
        "cyc-16-3": build_cyclotomic(16, 3),
        "cyc-81-4": build_cyclotomic(81, 4),
        "knn-4": build_knn_minus_matching(4),
        "latin-4": build_latin_square_scheme(mols_from_field(4, 1)),
        "latin-5x2": build_latin_square_scheme(mols_from_field(5, 2)),
        "wreath-4": build_wreath_family(4),
        "wreath-6": build_wreath_family(6),
        "sylvester": build_sylvester(),
        "decaen-vandam": dv,
        "dv-fusion-4": fused_scheme(dv, ((1,), (2,), (3, 4), (5,))),
        "bp-2": build_brouwer_pasechnik(2)[0],
        "bilinear-2-4": build_bilinear_forms(2)[1],
    }


@pytest.fixture(scope="session")
def small_corpus():
    return build_small_corpus()
