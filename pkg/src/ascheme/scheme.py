"""Symmetric association schemes: verification, intersection numbers, spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .errors import ColorMatrixError, DisconnectedGraphError, IrrationalSpectrumError
from .exactmat import (
    IntPolynomial,
    RatMatrix,
    char_poly,
    integer_roots,
    kernel_basis,
    mat_inverse,
    rational_char_poly,
    rref,
)
from .graph import Graph, count_product, pack_rows

# generic-element weights: c_i = base^i mod _WEIGHT_PRIME, base = d+1, d+2, ...
_WEIGHT_PRIME = 1_000_003
_GENERIC_ATTEMPTS = 5


class ColorMatrix:
    """A v x v symmetric matrix of class labels 0..d with 0 exactly on the diagonal."""

    __slots__ = ("cells", "v", "d")

    def __init__(self, cells, d: int | None = None):
        cells = np.array(cells, dtype=np.int16, copy=True)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
            raise ColorMatrixError("color matrix must be square")
        v = cells.shape[0]
        if v < 2:
            raise ColorMatrixError("a scheme needs at least two vertices")
        if d is None:
            d = int(cells.max())
        if d < 1:
            raise ColorMatrixError("a scheme needs at least one nontrivial class")
        if (cells < 0).any() or (cells > d).any():
            x, y = np.argwhere((cells < 0) | (cells > d))[0]
            raise ColorMatrixError(f"cell ({x},{y}) has class {cells[x, y]} outside 0..{d}")
        if not np.array_equal(cells, cells.T):
            x, y = np.argwhere(cells != cells.T)[0]
            raise ColorMatrixError(f"not symmetric at ({x},{y}): {cells[x, y]} != {cells[y, x]}")
        diag = cells.diagonal()
        if (diag != 0).any():
            x = int(np.flatnonzero(diag)[0])
            raise ColorMatrixError(f"diagonal cell ({x},{x}) has class {diag[x]}")
        off = cells + np.eye(v, dtype=np.int16)  # diagonal -> 1 so 0 is only checked off-diagonal
        if (off == 0).any():
            x, y = np.argwhere(off == 0)[0]
            raise ColorMatrixError(f"class 0 used off the diagonal at ({x},{y})")
        present = np.bincount(cells.ravel(), minlength=d + 1)
        empty = [i for i in range(1, d + 1) if present[i] == 0]
        if empty:
            raise ColorMatrixError(f"class {empty[0]} is empty")
        cells.setflags(write=False)
        self.cells = cells
        self.v = v
        self.d = d

    def __eq__(self, other) -> bool:
        return isinstance(other, ColorMatrix) and self.d == other.d and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.d, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"ColorMatrix(v={self.v}, d={self.d})"

    def relation(self, i: int) -> np.ndarray:
        return self.cells == i

    def graph(self, i: int) -> Graph:
        if not 1 <= i <= self.d:
            raise IndexError(f"relation index {i} outside 1..{self.d}")
        return Graph(self.v, pack_rows(self.cells == i))

    @classmethod
    def from_graphs(cls, graphs: Sequence[Graph]) -> ColorMatrix:
        """Color matrix whose class i+1 is graphs[i]; graphs must partition K_v."""
        v = graphs[0].v
        cells = np.zeros((v, v), dtype=np.int16)
        cover = np.zeros((v, v), dtype=np.int16)
        for i, g in enumerate(graphs, start=1):
            adj = g.adjacency()
            cells[adj] = i
            cover += adj
        if (cover > 1).any():
            x, y = np.argwhere(cover > 1)[0]
            raise ColorMatrixError(f"pair ({x},{y}) lies in more than one graph")
        return cls(cells, len(graphs))

    def relabel(self, mapping: Sequence[int], d: int) -> ColorMatrix:
        """Map class i to mapping[i] (mapping[0] must be 0)."""
        lut = np.asarray(mapping, dtype=np.int16)
        return ColorMatrix(lut[self.cells], d)


@dataclass(frozen=True)
class Violation:
    """Witness that A_i A_j is not constant on class h."""

    i: int
    j: int
    h: int
    first: tuple[int, int, int]
    second: tuple[int, int, int]

    def __str__(self) -> str:
        (x1, y1, c1), (x2, y2, c2) = self.first, self.second
        return (
            f"VIOLATION (A{self.i} A{self.j}) not constant on class {self.h}: "
            f"pair ({x1},{y1}) has {c1}, pair ({x2},{y2}) has {c2}"
        )


@dataclass(frozen=True)
class Spectrum:
    P: RatMatrix
    Q: RatMatrix
    multiplicities: tuple[int, ...]

    def P_int(self) -> list[list[int]]:
        return self.P.to_int_rows()

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.P.to_int_rows()]


@dataclass(frozen=True, eq=False)
class Scheme:
    colors: ColorMatrix
    p: np.ndarray  # p[h, i, j] = p_{ij}^h
    valencies: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        self.p.setflags(write=False)
        d = self.colors.d
        object.__setattr__(self, "valencies", tuple(int(self.p[0, i, i]) for i in range(d + 1)))

    @property
    def v(self) -> int:
        return self.colors.v

    @property
    def d(self) -> int:
        return self.colors.d

    def __repr__(self) -> str:
        return f"Scheme(v={self.v}, d={self.d}, valencies={self.valencies[1:]})"

    @cached_property
    def spectrum(self) -> Spectrum:
        return spectrum(self)

    def graph(self, i: int) -> Graph:
        return relation_graph(self, i)

    def intersection_matrix(self, i: int) -> RatMatrix:
        """L_i with (L_i)[h][j] = p_{ih}^j, i.e. multiplication by A_i."""
        d = self.d
        return RatMatrix([[int(self.p[j, i, h]) for j in range(d + 1)] for h in range(d + 1)])

    def idempotent(self, j: int) -> tuple[np.ndarray, int]:
        """Materialize E_j as (integer matrix N, denominator D) with E_j = N / D.

        Uses E_j = (1/v) sum_i Q_ij A_i.
        """
        q = self.spectrum.Q.column(j)
        den = self.v * reduce(lcm, (x.denominator for x in q), 1)
        coeffs = [int(x * den / self.v) for x in q]
        lut = np.asarray(coeffs, dtype=np.int64)
        return lut[self.colors.cells], den


# ---------------------------------------------------------------------------
# verification


def _class_segments(cells: np.ndarray, d: int):
    flat = cells.ravel()
    order = np.argsort(flat, kind="stable")
    counts = np.bincount(flat, minlength=d + 1)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    return order, starts


def scheme_verify(c: ColorMatrix) -> Scheme | Violation:
    """Check that the span of the relations is closed under multiplication.

    All d^2 products A_i A_j (i, j >= 1) are formed from packed rows and tested
    for constancy on every class; the first failure in (i, j, h) order is
    returned as a Violation, otherwise the Scheme with its intersection tensor.
    """
    v, d = c.v, c.d
    packed = [pack_rows(c.cells == i) for i in range(d + 1)]
    order, starts = _class_segments(c.cells, d)
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        p[i, 0, i] = p[i, i, 0] = 1
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            prod = count_product(packed[i], packed[j]).ravel()[order]
            lo = np.minimum.reduceat(prod, starts)
            hi = np.maximum.reduceat(prod, starts)
            bad = np.flatnonzero(lo != hi)
            if bad.size:
                h = int(bad[0])
                end = starts[h + 1] if h < d else v * v
                seg = prod[starts[h] : end]
                k = int(np.flatnonzero(seg != seg[0])[0])
                a, b = divmod(int(order[starts[h]]), v)
                x, y = divmod(int(order[starts[h] + k]), v)
                return Violation(i, j, h, (a, b, int(seg[0])), (x, y, int(seg[k])))
            p[:, i, j] = lo
    return Scheme(c, p)


def scheme_verify_transitive(c: ColorMatrix, base: int = 0) -> Scheme | Violation:
    """scheme_verify for colorings invariant under a vertex-transitive group.

    If every relation is preserved by a group acting transitively on vertices
    (translation schemes, Cayley colorings), then (A_i A_j)[x, y] equals the
    entry in row ``base`` of the image pair, so checking row ``base`` decides
    the whole product. The caller vouches for the group; nothing here checks it.
    """
    v, d = c.v, c.d
    packed = [pack_rows(c.cells == i) for i in range(d + 1)]
    row = c.cells[base]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        p[i, 0, i] = p[i, i, 0] = 1
    order = np.argsort(row, kind="stable")
    counts = np.bincount(row, minlength=d + 1)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            prod = count_product(packed[i][base : base + 1], packed[j])[0][order]
            lo = np.minimum.reduceat(prod, starts)
            hi = np.maximum.reduceat(prod, starts)
            bad = np.flatnonzero(lo != hi)
            if bad.size:
                h = int(bad[0])
                end = starts[h + 1] if h < d else v
                seg = prod[starts[h] : end]
                k = int(np.flatnonzero(seg != seg[0])[0])
                y1, y2 = int(order[starts[h]]), int(order[starts[h] + k])
                return Violation(i, j, h, (base, y1, int(seg[0])), (base, y2, int(seg[k])))
            p[:, i, j] = lo
    return Scheme(c, p)


def is_violation(result) -> bool:
    return isinstance(result, Violation)


def verified(c: ColorMatrix) -> Scheme:
    """scheme_verify, raising ColorMatrixError on a Violation."""
    result = scheme_verify(c)
    if isinstance(result, Violation):
        raise ColorMatrixError(str(result))
    return result


def intersection_tensor(s: Scheme) -> np.ndarray:
    return s.p


def relation_graph(s: Scheme, i: int) -> Graph:
    if not 1 <= i <= s.d:
        raise IndexError(f"relation index {i} outside 1..{s.d}")
    return s.colors.graph(i)


# ---------------------------------------------------------------------------
# spectrum


def _weights(d: int, attempt: int) -> list[int]:
    base = d + 1 + attempt
    return [0] + [pow(base, i, _WEIGHT_PRIME) for i in range(1, d + 1)]


def _combine(mats: Sequence[RatMatrix], weights: Sequence[int]) -> RatMatrix:
    n = mats[0].rows
    acc = [[Fraction(0)] * n for _ in range(n)]
    for m, w in zip(mats, weights):
        if w:
            for r in range(n):
                row = m.row(r)
                acc[r] = [a + w * b for a, b in zip(acc[r], row)]
    return RatMatrix(acc)


def _eigenvalues(m: RatMatrix) -> list[int]:
    roots, residual = integer_roots(char_poly(m))
    if residual:
        raise IrrationalSpectrumError(f"characteristic polynomial has an irreducible factor of degree {residual}")
    return sorted(set(roots), reverse=True)


def _generic_rows(mats: list[RatMatrix], d: int, attempts: int) -> list[list[Fraction]] | None:
    for attempt in range(attempts):
        m = _combine(mats, _weights(d, attempt))
        vals = _eigenvalues(m)
        if len(vals) != d + 1:
            continue
        n = d + 1
        rows = []
        for theta in vals:
            shifted = m - RatMatrix.identity(n).scale(theta)
            basis = kernel_basis(shifted)
            if len(basis) != 1:
                break
            rows.append(basis[0])
        else:
            return rows
    return None


def _restrict(m: RatMatrix, basis: list[list[Fraction]]) -> RatMatrix:
    # R with m @ U = U @ R for the invariant subspace spanned by the columns U
    u = RatMatrix(basis).transpose()
    image = m @ u
    # pick independent rows of U to solve the square system exactly
    red, pivots = rref(u.transpose())
    sub_u = RatMatrix([u.row(r) for r in pivots])
    sub_img = RatMatrix([image.row(r) for r in pivots])
    return mat_inverse(sub_u) @ sub_img


def _refined_rows(mats: list[RatMatrix], d: int) -> list[list[Fraction]]:
    """Common eigenvectors by splitting eigenspaces relation by relation."""
    n = d + 1
    spaces = [[[Fraction(int(i == j)) for i in range(n)] for j in range(n)]]
    for m in mats[1:]:
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            r = _restrict(m, basis)
            coeffs = rational_char_poly(r)
            if any(c.denominator != 1 for c in coeffs):
                raise IrrationalSpectrumError("non-integral restricted characteristic polynomial")
            roots, residual = integer_roots(IntPolynomial(tuple(int(c) for c in coeffs)))
            if residual:
                raise IrrationalSpectrumError(f"irreducible factor of degree {residual}")
            u = RatMatrix(basis).transpose()
            for theta in sorted(set(roots), reverse=True):
                kern = kernel_basis(r - RatMatrix.identity(r.rows).scale(theta))
                nxt.append([u.apply(k) for k in kern])
        spaces = nxt
    if any(len(b) != 1 for b in spaces) or len(spaces) != n:
        raise IrrationalSpectrumError("common eigenspaces do not split into d+1 lines")
    return [b[0] for b in spaces]


def spectrum(s: Scheme, generic_attempts: int = _GENERIC_ATTEMPTS) -> Spectrum:
    """First and second eigenmatrices and multiplicities, exactly.

    Rows of P are the right eigenvectors of the intersection matrices,
    normalised to first entry 1.
    """
    d, v = s.d, s.v
    mats = [s.intersection_matrix(i) for i in range(d + 1)]
    rows = _generic_rows(mats, d, generic_attempts)
    if rows is None:
        rows = _refined_rows(mats, d)

    normalised = []
    for vec in rows:
        if vec[0] == 0:
            raise IrrationalSpectrumError("eigenvector with zero leading entry")
        vec = [x / vec[0] for x in vec]
        for i, m in enumerate(mats):
            if m.apply(vec) != [vec[i] * x for x in vec]:
                raise IrrationalSpectrumError(f"vector is not a common eigenvector (relation {i})")
        if any(x.denominator != 1 for x in vec):
            raise IrrationalSpectrumError("non-integral eigenvalue")
        normalised.append(tuple(int(x) for x in vec))

    top = tuple(s.valencies)
    if top not in normalised:
        raise IrrationalSpectrumError("no eigenvector for the valencies")
    rest = sorted((r for r in normalised if r != top), key=lambda r: r[1:], reverse=True)
    P = RatMatrix([top] + rest)
    Q = mat_inverse(P).scale(v)
    mults = Q.row(0)
    if any(x.denominator != 1 or x <= 0 for x in mults):
        raise IrrationalSpectrumError(f"invalid multiplicities {mults}")
    return Spectrum(P, Q, tuple(int(x) for x in mults))


# ---------------------------------------------------------------------------
# distance-regular graphs


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.c)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


def _distance_layers(g: Graph) -> tuple[np.ndarray, int]:
    dist = g.distance_matrix()
    if (dist < 0).any():
        raise DisconnectedGraphError("graph is disconnected")
    return dist, int(dist.max())


def drg_array(g: Graph) -> IntersectionArray | None:
    """Intersection array of a distance-regular graph, or None."""
    dist, diam = _distance_layers(g)
    layers = [pack_rows(dist == i) for i in range(diam + 1)]
    b, c = [], []
    for i in range(diam + 1):
        mask = dist == i
        if i > 0:
            below = count_product(layers[i - 1], g.rows)[mask]
            if (below != below[0]).any():
                return None
            c.append(int(below[0]))
        if i < diam:
            above = count_product(layers[i + 1], g.rows)[mask]
            if (above != above[0]).any():
                return None
            b.append(int(above[0]))
    return IntersectionArray(tuple(b), tuple(c))


def distance_colors(g: Graph) -> ColorMatrix:
    """Color matrix of graph distances (class i = distance i)."""
    dist, diam = _distance_layers(g)
    return ColorMatrix(dist, diam)


def iter_relations(s: Scheme) -> Iterator[tuple[int, Graph]]:
    for i in range(1, s.d + 1):
        yield i, s.graph(i)
