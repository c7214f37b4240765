from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ascheme.constructions import build_latin_square_scheme, build_lattice_scheme, mols_from_field
from ascheme.constructions.bilinear import bp_distance3, bp_z4
from ascheme.errors import PreconditionError
from ascheme.graph import Graph
from ascheme.scheme import Scheme
from ascheme.spreads import (
    EXHAUSTED,
    FOUND,
    NONE,
    Spread,
    bp_s0,
    bp_spread_family,
    find_clique,
    find_spread,
    fission_by_spreads,
    is_square_spread,
    remove_spread,
)
from ascheme.srg import Kind, classify_type, srg_params


def disjoint_cliques(n, size):
    return Spread.from_cliques(n * size, [range(i * size, (i + 1) * size) for i in range(n)]).graph()


def test_is_square_spread():
    sp = is_square_spread(disjoint_cliques(4, 4))
    assert sp is not None and sp.count == 4 and sp.is_square
    assert is_square_spread(build_lattice_scheme(3).graph(1)) is None
    with pytest.raises(PreconditionError, match="square"):
        is_square_spread(Graph.empty(10))


def test_sylvester_relation3_is_spread(sylvester):
    sp = is_square_spread(sylvester.graph(3))
    assert sp is not None and sp.size == 6


def test_find_spread_clebsch_complement(clebsch_scheme):
    g = clebsch_scheme.graph(1).complement()
    r = find_spread(g)
    assert r.status == FOUND
    assert r.witness.graph().is_subgraph_of(g)
    assert is_square_spread(r.witness.graph()) == r.witness


def test_find_spread_none_and_budget(clebsch_scheme):
    r = find_spread(clebsch_scheme.graph(1))  # triangle-free: no K4
    assert r.status == NONE
    g = Graph.complete(16)
    assert find_spread(g, limit=3).status == EXHAUSTED
    with pytest.raises(PreconditionError):
        find_spread(Graph.complete(10))


def test_remove_spread_latin_square():
    # rows + columns + one square: valency 9, t = 3
    s = build_latin_square_scheme(mols_from_field(4, 1))
    ls = s.graph(1).union(s.graph(2)).union(s.graph(3))
    rows = is_square_spread(s.graph(1))
    res = remove_spread(ls, rows)
    p = srg_params(res.graph)
    assert (p.v, p.k, p.lam, p.mu) == (16, 6, 2, 2)
    assert res.after_type.kind is Kind.LS and (res.after_type.n, res.after_type.t) == (4, 2)
    assert res.graph.union(rows.graph()) == ls


def test_remove_spread_rejects_foreign_edges(clebsch_scheme):
    sp = find_spread(clebsch_scheme.graph(1).complement()).witness
    with pytest.raises(PreconditionError, match="not an edge"):
        remove_spread(clebsch_scheme.graph(1), sp)


def all_cliques_oracle(adj, size):
    v = len(adj)
    for combo in itertools.combinations(range(v), size):
        if all(adj[a, b] for a, b in itertools.combinations(combo, 2)):
            return True
    return False


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 13), st.integers(0, 2**32 - 1), st.floats(0.2, 0.9), st.integers(2, 6))
def test_find_clique_agrees_with_enumeration(v, seed, density, size):
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((v, v)) < density, 1)
    adj = upper | upper.T
    r = find_clique(Graph.from_adjacency(adj), size)
    assert r.found == all_cliques_oracle(adj, size)
    if r.found:
        assert len(r.witness) == size
        assert all(adj[a, b] for a, b in itertools.combinations(r.witness, 2))


def test_find_clique_trivial_cases(clebsch_scheme):
    assert find_clique(Graph.complete(5), 5).witness == [0, 1, 2, 3, 4]
    assert find_clique(clebsch_scheme.graph(1), 3).status == NONE


def test_bp_family(bp2):
    s, _ = bp2
    z3 = s.graph(3)
    z4 = bp_z4(s, 2)
    # Z4 agrees with the distance-3 predicate minus S0
    s0 = bp_s0(2)
    for x in range(0, 64, 5):
        for y in range(64):
            expect = x != y and bp_distance3(2, x, y) and s0.assignment[x] != s0.assignment[y]
            assert z4.has_edge(x, y) == expect
    c = find_clique(z4, 8)
    assert c.found
    fam = bp_spread_family(2, c.witness)
    assert len(fam) == 2
    for sp in fam:
        assert sp.graph().is_subgraph_of(z3)
        p = srg_params(sp.graph())
        assert classify_type(p).kind is Kind.LS and classify_type(p).t == 1
    for d, k in ((3, 0), (4, 1), (5, 2)):
        fis = fission_by_spreads(s, 3, fam[:k]) if k else s
        assert isinstance(fis, Scheme) and fis.d == d


def test_bp_family_rejects_bad_clique():
    with pytest.raises(PreconditionError, match="repeated"):
        bp_spread_family(2, [0, 1, 2, 3, 4, 5, 6, 7])
    with pytest.raises(PreconditionError, match="distance 3"):
        bp_spread_family(2, [0, 9, 18, 27, 36, 45, 54, 63])
