from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ascheme.errors import PreconditionError
from ascheme.graph import Graph
from ascheme.srg import (
    Kind,
    NotSrg,
    SrgParams,
    classify_type,
    common_eigenspace_dim,
    complement_params,
    is_ls_inclusive,
    is_nls_inclusive,
    lemma_type_from_eigenvalue,
    params_from_column,
    params_from_counts,
    params_from_eigenvalues,
    srg_params,
)


def brute_srg(adj: np.ndarray):
    """O(v k^2) common-neighbour count over adjacency lists."""
    v = len(adj)
    nbrs = [set(np.flatnonzero(adj[x]).tolist()) for x in range(v)]
    k = len(nbrs[0])
    lam, mu = set(), set()
    for x in range(v):
        for y in range(x + 1, v):
            c = len(nbrs[x] & nbrs[y])
            (lam if y in nbrs[x] else mu).add(c)
    if len(lam) == 1 and len(mu) == 1:
        return (v, k, lam.pop(), mu.pop())
    return None


def lattice(n):
    cells = [(i, j) for i in range(n) for j in range(n)]
    return Graph.from_adjacency([[a != b and (a[0] == b[0] or a[1] == b[1]) for b in cells] for a in cells])


def test_lattice_params():
    p = srg_params(lattice(4))
    assert (p.v, p.k, p.lam, p.mu) == (16, 6, 2, 2)
    assert classify_type(p).kind is Kind.LS


def test_sylvester_is_not_srg(sylvester):
    r = srg_params(sylvester.graph(1))
    assert isinstance(r, NotSrg)
    (x1, y1, c1), (x2, y2, c2) = r.first, r.second
    common = sylvester.graph(1).common_neighbors()
    assert common[x1, y1] == c1 != c2 == common[x2, y2]


def test_srg_params_agrees_with_brute_force(small_corpus):
    seen = 0
    for name, s in small_corpus.items():
        for i in range(1, s.d + 1):
            g = s.graph(i)
            if g.regular_degree() in (0, s.v - 1):
                continue
            want = brute_srg(g.adjacency())
            got = srg_params(g)
            if want is None:
                assert isinstance(got, NotSrg), (name, i)
            else:
                assert (got.v, got.k, got.lam, got.mu) == want, (name, i)
                column = [int(x) for x in s.spectrum.P.column(i)]
                assert {got.r, got.s} <= set(column[1:]), (name, i)
                seen += 1
    assert seen > 20


@pytest.mark.parametrize(
    "params, kind, n, t",
    [
        ((16, 5, 0, 2), Kind.NLS, -4, -1),
        ((9, 4, 1, 2), Kind.CONFERENCE, None, None),
        ((64, 21, 8, 6), Kind.LS, 8, 3),
        ((16, 6, 2, 2), Kind.LS, 4, 2),
        ((10, 3, 0, 1), Kind.UNTYPED, None, None),  # Petersen, v not square
        ((1024, 495, 238, 240), Kind.NLS, -32, -15),
    ],
)
def test_classify_examples(params, kind, n, t):
    typ = classify_type(params_from_counts(*params))
    assert (typ.kind, typ.n, typ.t) == (kind, n, t)


def test_conference_inclusive_helpers():
    p = params_from_counts(9, 4, 1, 2)
    assert is_ls_inclusive(p) and is_nls_inclusive(p)
    q = params_from_counts(16, 5, 0, 2)
    assert is_nls_inclusive(q) and not is_ls_inclusive(q)


def test_irrational_conference():
    p = params_from_counts(13, 6, 2, 3)
    assert p.conference_irrational and (p.f, p.g) == (6, 6)
    assert classify_type(p).kind is Kind.CONFERENCE


def test_feasibility_failure():
    assert isinstance(params_from_counts(16, 5, 1, 2), NotSrg)


@given(st.integers(min_value=2, max_value=30).flatmap(lambda n: st.tuples(st.just(n), st.integers(min_value=1, max_value=n - 1))))
def test_ls_complement_duality(nt):
    n, t = nt
    k = t * (n - 1)
    p = params_from_eigenvalues(n * n, k, n - t, -t)
    assert p.k * (p.k - 1 - p.lam) == p.mu * (p.v - 1 - p.k)
    typ = classify_type(p)
    if typ.kind is Kind.CONFERENCE:
        return
    assert (typ.kind, typ.n, typ.t) == (Kind.LS, n, t)
    comp = complement_params(p)
    ctyp = classify_type(comp)
    if ctyp.kind is not Kind.CONFERENCE:
        assert (ctyp.kind, ctyp.n, ctyp.t) == (Kind.LS, n, n + 1 - t)
    assert comp.k == (n + 1 - t) * (n - 1)


def test_lemma_type_from_eigenvalue():
    assert lemma_type_from_eigenvalue(64, 21, -3) is Kind.LS
    assert lemma_type_from_eigenvalue(16, 5, 1) is Kind.NLS
    with pytest.raises(PreconditionError):
        lemma_type_from_eigenvalue(36, 10, 1)


def test_common_eigenspace_dim():
    assert common_eigenspace_dim(8, 1, 14, 6, -2) == 0
    assert common_eigenspace_dim(8, 2, 14, 6, -2) == 0  # same type: k = -s(n-1)
    with pytest.raises(PreconditionError, match="-6"):
        common_eigenspace_dim(8, 2, 45, 5, -3)


def test_params_from_column():
    p = params_from_column(16, [5, 1, 1, -3])
    assert isinstance(p, SrgParams) and (p.lam, p.mu) == (0, 2)
    assert isinstance(params_from_column(36, [5, 2, -1, -1, -3]), NotSrg)


def test_srg_params_preconditions():
    with pytest.raises(PreconditionError, match="regular"):
        srg_params(Graph.from_edges(3, [(0, 1)]))
    with pytest.raises(PreconditionError, match="complete"):
        srg_params(Graph.complete(4))
    with pytest.raises(PreconditionError, match="no edges"):
        srg_params(Graph.empty(4))
