"""Symmetric bilinear forms graphs and Brouwer-Pasechnik graphs (diameter 3)."""

from __future__ import annotations

import numpy as np

from ..errors import PreconditionError
from ..gf import cross, decode_vector, dot, encode_vector, gf, sym_rank, vec_add, vec_sub
from ..graph import Graph
from ..scheme import Scheme, distance_colors, verified
from ..spreads import bp_s0
from .linear import MAX_VERTICES, difference_coloring, verified_transitive

MAX_BILINEAR_Q = 4
MAX_BP_Q = 3

# class labels of the 4-class bilinear forms scheme
RANK1, RANK2, RANK3, ALTERNATING = 1, 2, 3, 4


def bilinear_labels(q: int) -> list[int]:
    """Class of each symmetric 3x3 matrix (m11, m12, m13, m22, m23, m33)."""
    f = gf(q)
    labels = [0]
    for x in range(1, q**6):
        r, alt = sym_rank(f, decode_vector(f, x, 6))
        labels.append(ALTERNATING if alt else r)
    return labels


def build_bilinear_forms(q: int, max_q: int = MAX_BILINEAR_Q) -> tuple[Scheme, Scheme]:
    """(3-class, 4-class) schemes on symmetric 3x3 matrices over GF(q), q even.

    Classes by the rank of the difference: 1 rank one, 2 rank two and not
    alternating, 3 rank three, 4 alternating (merged into 3 in the 3-class
    version, which is the distance scheme of the rank-one graph).
    """
    f = gf(q)
    if f.p != 2:
        raise PreconditionError(f"q={q} must be even")
    if q > max_q:
        raise PreconditionError(f"q={q} exceeds the default limit {max_q}")
    labels = bilinear_labels(q)
    four = verified_transitive(difference_coloring(f, 6, labels, 4))
    three = verified_transitive(four.colors.relabel([0, 1, 2, 3, 3], 3))
    return three, four


def _bp_tables(q: int):
    f = gf(q)
    n = q**3
    vecs = [decode_vector(f, a, 3) for a in range(n)]
    cr = np.array([[encode_vector(f, cross(f, u, w)) for w in vecs] for u in vecs], dtype=np.int64)
    add = np.array([[encode_vector(f, vec_add(f, u, w)) for w in vecs] for u in vecs], dtype=np.int64)
    return cr, add


def bp_graph(q: int) -> Graph:
    """(u,u') ~ (v,v') iff v' - u' = u x v, vertex enc(u) * q^3 + enc(u')."""
    n = q**3
    cr, add = _bp_tables(q)
    adj = np.zeros((n * n, n * n), dtype=bool)
    us = np.arange(n)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            adj[a * n + us, b * n + add[us, cr[a, b]]] = True
    return Graph.from_adjacency(adj)


def build_brouwer_pasechnik(q: int, max_q: int = MAX_BP_Q) -> tuple[Scheme, Graph]:
    """Distance scheme of the Brouwer-Pasechnik graph Z on GF(q)^3 x GF(q)^3."""
    if q > max_q:
        raise PreconditionError(f"q={q} exceeds the default limit {max_q}")
    if q**6 > MAX_VERTICES:
        raise PreconditionError(f"{q**6} vertices exceeds {MAX_VERTICES}")
    z = bp_graph(q)
    s = verified(distance_colors(z))
    if s.d != 3:
        raise AssertionError(f"Brouwer-Pasechnik graph has diameter {s.d}")
    return s, z


def bp_distance3(q: int, x: int, y: int) -> bool:
    """Distance-3 test: w = u and w' != u', or w' - u' not orthogonal to w - u."""
    f = gf(q)
    n = q**3
    u, u2 = (decode_vector(f, c, 3) for c in divmod(x, n))
    w, w2 = (decode_vector(f, c, 3) for c in divmod(y, n))
    if w == u:
        return w2 != u2
    return dot(f, vec_sub(f, w2, u2), vec_sub(f, w, u)) != 0


def bp_z4(s: Scheme, q: int) -> Graph:
    """Z_3 minus the spread S_0 of constant first coordinate."""
    return s.graph(3).difference(bp_s0(q).graph())

