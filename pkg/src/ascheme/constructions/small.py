"""Small combinatorial schemes: complete, lattice, Latin squares, K_{n,n} minus a matching, wreath products."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import PreconditionError
from ..gf import gf
from ..scheme import ColorMatrix, Scheme, verified


def build_complete(m: int) -> Scheme:
    """The 1-class scheme on m >= 2 vertices."""
    if m < 2:
        raise PreconditionError("the complete scheme needs at least 2 vertices")
    cells = 1 - np.eye(m, dtype=np.int16)
    return verified(ColorMatrix(cells, 1))


def build_lattice_scheme(n: int) -> Scheme:
    """L_2(n) (same row or same column) and its complement on an n x n grid."""
    if n < 2:
        raise PreconditionError("lattice needs n >= 2")
    i, j = np.divmod(np.arange(n * n), n)
    same = (i[:, None] == i[None, :]) | (j[:, None] == j[None, :])
    cells = np.where(same, 1, 2).astype(np.int16)
    np.fill_diagonal(cells, 0)
    return verified(ColorMatrix(cells, 2))


def _check_latin(sq: np.ndarray, n: int, idx: int) -> None:
    if sq.shape != (n, n):
        raise PreconditionError(f"square {idx} is not {n} x {n}")
    want = np.arange(n)
    for r in range(n):
        if not np.array_equal(np.sort(sq[r]), want):
            raise PreconditionError(f"square {idx}: row {r} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(sq[:, r]), want):
            raise PreconditionError(f"square {idx}: column {r} is not a permutation of 0..{n - 1}")


def mols_from_field(n: int, count: int) -> list[np.ndarray]:
    """count mutually orthogonal Latin squares a*i + j, a = 1..count, over GF(n)."""
    f = gf(n)
    if not 1 <= count <= n - 1:
        raise PreconditionError(f"between 1 and {n - 1} squares exist this way")
    mul, add = f.mul_table, f.add_table
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return [add[mul[a][i], j] for a in range(1, count + 1)]


def build_latin_square_scheme(squares: Sequence[np.ndarray]) -> Scheme:
    """Rows, columns, one class per square, then the remaining pairs (if any).

    Vertex (i, j) of the grid is i*n + j; class 1 = same row, 2 = same column,
    2+s = same symbol in square s.
    """
    if not squares:
        raise PreconditionError("at least one Latin square is required")
    sq = [np.asarray(s, dtype=np.int64) for s in squares]
    n = sq[0].shape[0]
    for idx, s in enumerate(sq):
        _check_latin(s, n, idx)
    for a in range(len(sq)):
        for b in range(a + 1, len(sq)):
            pairs = {(int(x), int(y)) for x, y in zip(sq[a].ravel(), sq[b].ravel())}
            if len(pairs) != n * n:
                raise PreconditionError(f"squares {a} and {b} are not orthogonal")
    v = n * n
    i, j = np.divmod(np.arange(v), n)
    cells = np.zeros((v, v), dtype=np.int16)
    labels = [i, j] + [s.ravel() for s in sq]
    for c, lab in enumerate(labels, start=1):
        cells[(lab[:, None] == lab[None, :]) & (cells == 0)] = c
    np.fill_diagonal(cells, 0)
    d = len(labels)
    rest = cells == 0
    np.fill_diagonal(rest, False)
    if rest.any():
        d += 1
        cells[rest] = d
    return verified(ColorMatrix(cells, d))


def build_knn_minus_matching(n: int) -> Scheme:
    """K_{n,n} minus a perfect matching on 2n vertices.

    Vertex side*n + idx. Class 1: opposite sides, different index (the graph);
    class 2: same side; class 3: opposite sides, same index (the matching).
    For n >= 3 these are the distance-1, 2, 3 relations of the graph.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    side, idx = np.divmod(np.arange(2 * n), n)
    same_side = side[:, None] == side[None, :]
    same_idx = idx[:, None] == idx[None, :]
    cells = np.where(same_side, 2, np.where(same_idx, 3, 1)).astype(np.int16)
    np.fill_diagonal(cells, 0)
    return verified(ColorMatrix(cells, 3))


def build_wreath(outer: Scheme | int, inner: Scheme) -> Scheme:
    """Wreath product: outer classes blown up by all-ones blocks, then inner classes.

    ``outer`` may be an int m, meaning the 1-class scheme on m vertices (m = 1
    gives the inner scheme itself). Vertex block*n + x; classes 1..d_outer come
    from the outer scheme, d_outer + 1.. are the inner classes inside blocks.
    """
    n = inner.v
    if isinstance(outer, int):
        if outer < 1:
            raise PreconditionError("outer scheme needs at least one vertex")
        m = outer
        outer_cells = (1 - np.eye(m, dtype=np.int16)) if m > 1 else np.zeros((1, 1), dtype=np.int16)
        d_out = 1 if m > 1 else 0
    else:
        m = outer.v
        outer_cells = outer.colors.cells
        d_out = outer.d
    big = np.kron(outer_cells.astype(np.int16), np.ones((n, n), dtype=np.int16))
    inner_block = np.kron(np.eye(m, dtype=np.int16), inner.colors.cells + d_out)
    inner_block[np.kron(np.eye(m, dtype=bool), np.eye(n, dtype=bool))] = 0
    cells = np.where(big > 0, big, inner_block).astype(np.int16)
    return verified(ColorMatrix(cells, d_out + inner.d))


def build_wreath_family(n: int) -> Scheme:
    """1-class scheme on n/2 vertices wreathed with K_{n,n} minus a matching.

    Classes: 1 complete multipartite, 2 the bipartite graph, 3 same side
    (a square spread of n cliques of size n), 4 the matching.
    """
    if n < 2 or n % 2:
        raise PreconditionError("n must be even and >= 2")
    return build_wreath(n // 2, build_knn_minus_matching(n))
