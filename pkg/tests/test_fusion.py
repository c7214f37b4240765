from __future__ import annotations

import numpy as np
import pytest

from ascheme.constructions import build_cyclotomic, build_latin_square_scheme, fused_scheme, mols_from_field
from ascheme.errors import PreconditionError
from ascheme.fusion import (
    amorphic_check,
    common_fission,
    format_blocks,
    fuse,
    is_fusion_scheme,
    make_partition,
    parse_blocks,
    partitions,
    restricted_growth_strings,
    theorem_main_check,
    verify_commuting_decomposition,
)
from ascheme.graph import Graph
from ascheme.scheme import ColorMatrix, Scheme, Violation, scheme_verify
from ascheme.spreads import bp_s0, find_spread
from ascheme.srg import Kind

BELL = [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("d", range(1, 8))
def test_partition_counts_and_order(d):
    rgs = list(restricted_growth_strings(d))
    assert len(rgs) == BELL[d]
    assert rgs == sorted(rgs)
    parts = list(partitions(d))
    assert len(set(parts)) == BELL[d]
    for p in parts:
        assert make_partition(p, d) == p


def test_parse_blocks():
    p = parse_blocks("3,4|1|2", 4)
    assert p == ((1,), (2,), (3, 4))
    assert format_blocks(p) == "1|2|3,4"
    for bad in ("1,2|2,3|4", "1|2", "1|2|3|x", "0|1,2,3,4", "1||2,3,4"):
        with pytest.raises(PreconditionError):
            parse_blocks(bad, 4)


def test_identity_fusion_is_identity(small_corpus):
    for name, s in small_corpus.items():
        ident = tuple((i,) for i in range(1, s.d + 1))
        assert fuse(s, ident) == s.colors, name


def test_fast_path_matches_full_verification(sylvester, decaen_vandam):
    for s in (sylvester, decaen_vandam):
        for p in partitions(s.d):
            fast = is_fusion_scheme(s, p)
            slow = scheme_verify(fuse(s, p))
            assert isinstance(fast, Violation) == isinstance(slow, Violation), p
            if isinstance(fast, Scheme):
                assert np.array_equal(fast.p, slow.p)
            else:
                # the witness pairs are genuine: same fused class, different counts
                cells = fuse(s, p).cells
                prod = (cells == fast.i).astype(np.int64) @ (cells == fast.j).astype(np.int64)
                (x1, y1, c1), (x2, y2, c2) = fast.first, fast.second
                assert cells[x1, y1] == cells[x2, y2] == fast.h
                assert prod[x1, y1] == c1 and prod[x2, y2] == c2 and c1 != c2


def test_sylvester_fusions(sylvester):
    assert isinstance(is_fusion_scheme(sylvester, ((1, 3), (2,), (4,))), Violation)
    ok = is_fusion_scheme(sylvester, ((1,), (2,), (3, 4)))
    assert isinstance(ok, Scheme) and ok.valencies == (1, 5, 20, 10)


def test_sylvester_not_amorphic(sylvester):
    v = amorphic_check(sylvester)
    assert not v.amorphic
    assert format_blocks(v.failing_partition) == "1,3,4|2"
    # every earlier partition in canonical order is a fusion scheme
    for p in list(partitions(4))[: v.checked - 1]:
        assert isinstance(is_fusion_scheme(sylvester, p), Scheme)


def test_decaen_vandam_three_class_fusion_amorphic(decaen_vandam):
    f3 = fused_scheme(decaen_vandam, ((1, 2), (3, 4), (5,)))
    assert f3.valencies[1:] == (18, 18, 27)
    v = amorphic_check(f3)
    assert v.amorphic and v.common_kind is Kind.NLS and v.checked == 5


def cycle_scheme(m):
    """Distance scheme of the m-cycle: floor(m/2) classes."""
    x = np.arange(m)
    diff = np.abs(x[:, None] - x[None, :])
    return scheme_verify(ColorMatrix(np.minimum(diff, m - diff)))


def test_amorphic_guard():
    s = cycle_scheme(23)
    assert s.d == 11
    with pytest.raises(PreconditionError, match="guard"):
        amorphic_check(s)
    assert not amorphic_check(s, force=True).amorphic


def latin_fusions():
    s = build_latin_square_scheme(mols_from_field(4, 1))  # classes rows, cols, square, rest
    a = fused_scheme(s, ((1,), (2,), (3, 4)))  # {A1, A2, B}
    b = fused_scheme(s, ((1, 2), (3,), (4,)))  # {A, B1, B2}
    return s, a, b


def test_common_fission_latin_square():
    s, a, b = latin_fusions()
    rep = common_fission(a, b)
    assert rep.ok and rep.idempotents_match and not rep.conference_obstruction
    assert rep.split == (3, 1)
    assert rep.scheme.colors == s.colors
    # fusing back along the split reproduces both inputs
    assert fuse(rep.scheme, ((1,), (2,), (3, 4))) == a.colors
    assert fuse(rep.scheme, ((1, 2), (3,), (4,))) == b.colors


def test_common_fission_rejects_unrelated():
    _, a, _ = latin_fusions()
    with pytest.raises(PreconditionError):
        common_fission(a, a)


def test_common_fission_bp(bp2):
    s, _ = bp2
    s0 = bp_s0(2).graph()
    z3 = s.graph(3)
    a_side = Graph.complete(64).difference(z3)
    b = scheme_verify(ColorMatrix.from_graphs([a_side, s0, z3.difference(s0)]))
    assert isinstance(b, Scheme)
    rep = common_fission(s, b)
    assert rep.ok and rep.idempotents_match
    assert rep.scheme.valencies[1:] == (7, 21, 7, 28)
    assert fuse(rep.scheme, ((1,), (2,), (3, 4))) == s.colors
    assert fuse(rep.scheme, ((1, 2), (3,), (4,))) == b.colors


def paley81_pair():
    a = fused_scheme(build_cyclotomic(81, 4), ((1, 3), (2,), (4,)))
    b = fused_scheme(build_cyclotomic(81, 10), ((1,), (2, 4, 6, 8, 10), (3, 5, 7, 9)))
    return a, b


def test_common_fission_paley81():
    a, b = paley81_pair()
    assert a.valencies[1:] == (40, 20, 20)
    assert sorted(b.valencies[1:]) == [8, 32, 40]
    rep = common_fission(a, b)
    assert not rep.ok and rep.conference_obstruction
    assert isinstance(rep.violation, Violation)


def test_theorem_main_bilinear(bilinear2):
    three, four = bilinear2
    alt = four.graph(4)
    rest = three.graph(3).difference(alt)
    rep = theorem_main_check(three, 3, [alt, rest])
    assert rep.passed, str(rep)
    assert rep.scheme.valencies[1:] == (7, 21, 7, 28)
    # the induced pair also has a common fission
    b = scheme_verify(ColorMatrix.from_graphs([Graph.complete(64).difference(three.graph(3)), alt, rest]))
    assert common_fission(three, b).ok


def test_theorem_main_paley81_fails_iii():
    c4 = build_cyclotomic(81, 4)
    two = fused_scheme(c4, ((1, 3), (2, 4)))
    rep = theorem_main_check(two, 1, [c4.graph(1), c4.graph(3)])
    assert "iii" in rep.failed()
    assert rep.scheme is None


def test_theorem_main_rejects_bad_parts(bilinear2):
    three, four = bilinear2
    with pytest.raises(PreconditionError, match="partition"):
        theorem_main_check(three, 3, [four.graph(4)])
    with pytest.raises(PreconditionError, match="overlap"):
        theorem_main_check(three, 3, [four.graph(4), three.graph(3)])


def test_commuting_decomposition_of_scheme(sylvester):
    rep = verify_commuting_decomposition([sylvester.graph(i) for i in range(1, 5)])
    assert rep.covers and rep.disjoint and rep.commuting and rep.is_scheme


def test_commuting_decomposition_overlap():
    t1 = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    t2 = Graph.from_edges(4, [(0, 1), (1, 3), (0, 3)])
    with pytest.raises(PreconditionError, match=r"\(0,1\) covered twice"):
        verify_commuting_decomposition([t1, t2])
    with pytest.raises(PreconditionError, match="not covered"):
        verify_commuting_decomposition([t1])


def test_clebsch_decomposition(clebsch_scheme):
    clebsch = clebsch_scheme.graph(1)
    found = find_spread(clebsch.complement(), size=4)
    assert found.found
    spread = found.witness.graph()
    rest = clebsch.complement().difference(spread)
    rep = verify_commuting_decomposition([clebsch, spread, rest])
    assert rep.covers and rep.disjoint and rep.commuting and not rep.is_scheme
    kinds = [t.kind if t else None for t in rep.types]
    assert kinds == [Kind.NLS, Kind.LS, None]
    assert rest.regular_degree() == 7
