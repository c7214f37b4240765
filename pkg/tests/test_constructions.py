from __future__ import annotations

import itertools

import numpy as np
import pytest

from ascheme.constructions import (
    AG28_FUSION,
    build_ag28_scheme,
    build_bilinear_forms,
    build_complete,
    build_cyclotomic,
    build_decaen_vandam,
    build_folded_halved_cube,
    build_gq22,
    build_hamming,
    build_knn_minus_matching,
    build_latin_square_scheme,
    build_lattice_scheme,
    build_polhill_product,
    build_translation_scheme,
    build_wreath,
    build_wreath_family,
    check_gq22,
    fused_scheme,
    mols_from_field,
    no_three_collinear,
    pg24_partition,
    projective_points,
)
from ascheme.constructions.linear import folded_halved_words
from ascheme.errors import PreconditionError
from ascheme.fusion import amorphic_check, relation_types
from ascheme.gf import gf
from ascheme.scheme import Scheme, distance_colors, drg_array, scheme_verify
from ascheme.spreads import bp_s0, is_square_spread
from ascheme.srg import Kind, srg_params

SYLVESTER_P = {(1, 5, 20, 5, 5), (1, 2, -1, -1, -1), (1, -3, 4, -1, -1), (1, -1, -4, 5, -1), (1, -1, -4, -1, 5)}
DCVD_P = [(1, 9, 9, 9, 9, 27), (1, 5, -3, -3, -3, 3), (1, -3, 5, -3, -3, 3),
          (1, -3, -3, 5, -3, 3), (1, -3, -3, -3, 5, 3), (1, 1, 1, 1, 1, -5)]


def test_gq22_axioms():
    gq = build_gq22()
    assert len(gq.points) == 15 and len(gq.lines) == 15
    assert len(gq.spreads) == 6 and len(gq.ovoids) == 6
    assert check_gq22(gq) == []
    inc = gq.incidence
    assert (inc.sum(axis=0) == 3).all() and (inc.sum(axis=1) == 3).all()
    # no triangles: two points share at most one line
    assert ((inc.astype(int) @ inc.T.astype(int))[~np.eye(15, dtype=bool)] <= 1).all()
    for a, b in itertools.combinations(gq.spreads, 2):
        assert len(set(a) & set(b)) == 1
    for a, b in itertools.combinations(gq.ovoids, 2):
        assert len(set(a) & set(b)) == 1


def test_sylvester(sylvester):
    assert set(sylvester.spectrum.rows()) == SYLVESTER_P
    assert sylvester.spectrum.multiplicities == (1, 16, 5, 5, 9)
    assert is_square_spread(sylvester.graph(3)) and is_square_spread(sylvester.graph(4))
    # relations 3 and 4 together form the distance-3 graph of the Sylvester graph
    dist = distance_colors(sylvester.graph(1)).cells
    assert np.array_equal(dist == 3, (sylvester.colors.cells == 3) | (sylvester.colors.cells == 4))


def test_bilinear(bilinear2):
    three, four = bilinear2
    assert set(three.spectrum.rows()) == {(1, 7, 21, 35), (1, 3, 1, -5), (1, -5, 9, -5), (1, -1, -3, 3)}
    assert is_square_spread(four.graph(4)).count == 8
    kinds = [t.kind if t else None for _, t in relation_types(four)]
    assert kinds.count(Kind.LS) == 2
    with pytest.raises(PreconditionError, match="even"):
        build_bilinear_forms(3)


def test_brouwer_pasechnik(bp2):
    s, z = bp2
    arr = drg_array(z)
    assert (arr.b, arr.c) == ((7, 6, 5), (1, 2, 3))
    assert s.valencies[3] == 35
    assert bp_s0(2).graph().is_subgraph_of(s.graph(3))


def test_hamming():
    assert build_hamming(3, 4).valencies[1:] == (9, 27, 27)
    p = srg_params(build_hamming(2, 4).graph(1))
    assert (p.v, p.k, p.lam, p.mu) == (16, 6, 2, 2)
    cube = build_hamming(3, 2)
    assert all(x.denominator == 1 for row in cube.spectrum.P.tolist() for x in row)
    with pytest.raises(PreconditionError):
        build_hamming(5, 9999)


def test_translation_matches_dense_verification():
    s = build_decaen_vandam()
    dense = scheme_verify(s.colors)
    assert np.array_equal(dense.p, s.p)
    f2 = gf(2)
    one = build_translation_scheme(f2, 3, [list(itertools.product(range(2), repeat=3))[1:]])
    assert isinstance(one, Scheme) and one.d == 1 and one.v == 8
    f4 = gf(4)
    pts = [v for v in itertools.product(range(4), repeat=3) if any(v)]
    with pytest.raises(PreconditionError, match="scalar"):
        build_translation_scheme(f4, 3, [pts[:1], pts[1:]])


def test_decaen_vandam(decaen_vandam):
    assert decaen_vandam.spectrum.rows() == [DCVD_P[0]] + sorted(DCVD_P[1:], key=lambda r: r[1:], reverse=True)
    assert sorted(decaen_vandam.spectrum.rows()) == sorted(DCVD_P)


def test_pg24_partition():
    f = gf(4)
    part = pg24_partition()
    pts = [p for block in part.parts for p in block]
    assert sorted(pts) == projective_points(f, 3) and len(pts) == 21
    assert len(part.parts[4]) == 9
    assert all(sum(1 for a in p if a) == 2 for p in part.parts[4])
    assert len(part.hyperoval()) == 6 and no_three_collinear(f, part.hyperoval())
    assert not no_three_collinear(f, [(0, 0, 1), (0, 1, 0), (0, 1, 1)])


def test_cyclotomic():
    clebsch = build_cyclotomic(16, 3)
    for i in range(1, 4):
        p = srg_params(clebsch.graph(i))
        assert (p.v, p.k, p.lam, p.mu) == (16, 5, 0, 2)
    paley9 = build_cyclotomic(9, 2)
    assert srg_params(paley9.graph(1)).k == 4
    with pytest.raises(PreconditionError, match="directed"):
        build_cyclotomic(7, 2)
    with pytest.raises(PreconditionError, match="divide"):
        build_cyclotomic(16, 4)


def test_paley81_fusion_types():
    a = fused_scheme(build_cyclotomic(81, 4), ((1, 3), (2,), (4,)))
    b = fused_scheme(build_cyclotomic(81, 10), ((1,), (2, 4, 6, 8, 10), (3, 5, 7, 9)))
    # 40 is a conference graph; the others are strictly typed
    assert [t.kind for _, t in relation_types(a)] == [Kind.CONFERENCE, Kind.NLS, Kind.NLS]
    assert sorted((p.k, t.kind.name) for p, t in relation_types(b)) == [(8, "LS"), (32, "LS"), (40, "CONFERENCE")]


def test_ag28():
    s = build_ag28_scheme()
    assert s.d == 9
    assert all(is_square_spread(s.graph(i)).count == 8 for i in range(1, 10))
    assert fused_scheme(s, AG28_FUSION).valencies[1:] == (21, 14, 14, 14)


def test_polhill_and_folded_halved():
    s = build_polhill_product()
    rows = set(s.spectrum.rows())
    assert rows == {(1, 231, 264, 264, 264), (1, -25, 8, 8, 8), (1, 7, -24, 8, 8), (1, 7, 8, -24, 8), (1, 7, 8, 8, -24)}
    a = srg_params(s.graph(1).union(s.graph(2)))
    assert (a.v, a.k, a.lam, a.mu, a.r, a.s) == (1024, 495, 238, 240, 15, -17)
    f = build_folded_halved_cube()
    assert f.spectrum.rows() == [(1, 66, 495, 462), (1, 26, 15, -42), (1, 2, -17, 14), (1, -6, 15, -10)]
    b = srg_params(f.graph(2))
    assert (b.v, b.k, b.lam, b.mu) == (a.v, a.k, a.lam, a.mu)


def test_folded_halved_words():
    words = folded_halved_words()
    assert len(words) == 1024
    assert all(bin(int(w)).count("1") % 2 == 0 for w in words)


def test_knn_minus_matching():
    s = build_knn_minus_matching(4)
    assert s.valencies[1:] == (3, 3, 1)
    arr = drg_array(s.graph(1))
    assert (arr.b, arr.c) == ((3, 2, 1), (1, 2, 3))
    assert build_knn_minus_matching(6).valencies[1:] == (5, 5, 1)


def test_lattice():
    p = srg_params(build_lattice_scheme(4).graph(1))
    assert (p.v, p.k, p.lam, p.mu) == (16, 6, 2, 2)
    q = srg_params(build_lattice_scheme(3).graph(2))
    assert (q.v, q.k, q.lam, q.mu) == (9, 4, 1, 2)


def test_latin_square_scheme():
    one = build_latin_square_scheme(mols_from_field(4, 1))
    assert one.valencies[1:] == (3, 3, 3, 6)
    two = build_latin_square_scheme(mols_from_field(4, 2))
    assert two.valencies[1:] == (3, 3, 3, 3, 3)
    assert amorphic_check(two).amorphic and amorphic_check(one).amorphic
    full = build_latin_square_scheme(mols_from_field(4, 3))
    assert full.d == 5
    bad = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    with pytest.raises(PreconditionError, match="orthogonal"):
        build_latin_square_scheme([bad, bad])
    with pytest.raises(PreconditionError, match="permutation"):
        build_latin_square_scheme([np.zeros((4, 4), dtype=int)])


def wreath_matrix(n):
    h = n // 2
    return {(1, (h - 1) * 2 * n, n - 1, n - 1, 1), (1, -2 * n, n - 1, n - 1, 1), (1, 0, 1, -1, -1),
            (1, 0, -1, -1, 1), (1, 0, 1 - n, n - 1, -1)}


@pytest.mark.parametrize("n", [4, 6, 8])
def test_wreath_family(n):
    s = build_wreath_family(n)
    assert set(s.spectrum.rows()) == wreath_matrix(n)


def test_wreath_trivial_outer():
    inner = build_knn_minus_matching(4)
    assert build_wreath(1, inner).colors == inner.colors
    assert build_wreath(build_complete(3), inner).valencies[1:] == (16, 3, 3, 1)
