"""Clique spreads: detection, exact-cover search, removal, and clique search."""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

import numpy as np

from .errors import DisconnectedGraphError, PreconditionError, TheoremFalsified
from .gf import decode_vector, dot, encode_vector, gf, vec_add, vec_scale, vec_sub
from .graph import Graph, pack_rows
from .scheme import ColorMatrix, IntersectionArray, Scheme, Violation, drg_array, scheme_verify
from .srg import NotSrg, SrgParams, SrgType, classify_type, srg_params

DEFAULT_BUDGET = 10**7

FOUND, NONE, EXHAUSTED = "WITNESS", "NONE", "EXHAUSTED"


def default_budget() -> int:
    env = os.environ.get("ASCHEME_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Spread:
    """A partition of the vertices into cliques of equal size.

    assignment[x] is the clique index of x; cliques are numbered by least member.
    """

    size: int
    assignment: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.assignment)

    @property
    def count(self) -> int:
        return self.v // self.size

    @property
    def is_square(self) -> bool:
        return self.size * self.size == self.v

    def cliques(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for x, c in enumerate(self.assignment):
            out[c].append(x)
        return out

    def graph(self) -> Graph:
        lab = np.asarray(self.assignment)
        adj = lab[:, None] == lab[None, :]
        np.fill_diagonal(adj, False)
        return Graph(self.v, pack_rows(adj))

    @classmethod
    def from_cliques(cls, v: int, cliques: Sequence[Sequence[int]]) -> Spread:
        cliques = sorted(sorted(c) for c in cliques)
        sizes = {len(c) for c in cliques}
        if len(sizes) != 1:
            raise PreconditionError(f"cliques of unequal sizes {sorted(sizes)}")
        assignment = [-1] * v
        for idx, clique in enumerate(cliques):
            for x in clique:
                if not 0 <= x < v:
                    raise PreconditionError(f"vertex {x} outside 0..{v - 1}")
                if assignment[x] >= 0:
                    raise PreconditionError(f"vertex {x} lies in two cliques")
                assignment[x] = idx
        if -1 in assignment:
            raise PreconditionError(f"vertex {assignment.index(-1)} is not covered")
        return cls(sizes.pop(), tuple(assignment))


@dataclass(frozen=True)
class SearchResult:
    status: str  # FOUND, NONE or EXHAUSTED
    nodes: int
    witness: object = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _square_root(v: int) -> int:
    n = isqrt(v)
    if n * n != v:
        raise PreconditionError(f"vertex count {v} is not a perfect square")
    return n


def is_square_spread(g: Graph) -> Spread | None:
    """The spread if g is exactly a disjoint union of n cliques of order n."""
    n = _square_root(g.v)
    if g.regular_degree() != n - 1:
        return None
    closed = g.adjacency() | np.eye(g.v, dtype=bool)
    seen: dict[bytes, list[int]] = {}
    for x in range(g.v):
        seen.setdefault(np.packbits(closed[x]).tobytes(), []).append(x)
    groups = list(seen.values())
    if len(groups) != n or any(len(grp) != n for grp in groups):
        return None
    # each closed neighbourhood must be exactly its own group
    for grp in groups:
        if not closed[np.ix_(grp, grp)].all():
            return None
    return Spread.from_cliques(g.v, groups)


def _bitsets(g: Graph) -> list[int]:
    adj = g.adjacency()
    weights = [1 << i for i in range(g.v)]
    return [sum(w for w, bit in zip(weights, row) if bit) for row in adj]


class _Budget(Exception):
    pass


def find_spread(g: Graph, size: int | None = None, limit: int | None = None) -> SearchResult:
    """Exact-cover search for a partition of V(g) into cliques of the given size.

    The default size is sqrt(v) (a square spread). The least uncovered vertex
    is always covered next, with its cliques tried in lexicographic order.
    """
    if size is None:
        size = _square_root(g.v)
    if size < 1 or g.v % size:
        raise PreconditionError(f"{g.v} vertices cannot be split into cliques of size {size}")
    limit = default_budget() if limit is None else limit
    nbr = _bitsets(g)
    full = (1 << g.v) - 1
    nodes = 0
    chosen: list[list[int]] = []

    def cliques_with(x: int, uncovered: int):
        # size-clique containing x inside uncovered vertices, lexicographic
        def extend(clique: list[int], cand: int):
            nonlocal nodes
            nodes += 1
            if nodes > limit:
                raise _Budget
            if len(clique) == size:
                yield list(clique)
                return
            need = size - len(clique)
            while cand and cand.bit_count() >= need:
                low = cand & -cand
                y = low.bit_length() - 1
                cand ^= low
                clique.append(y)
                yield from extend(clique, cand & nbr[y])
                clique.pop()

        yield from extend([x], nbr[x] & uncovered)

    def cover(uncovered: int) -> bool:
        if not uncovered:
            return True
        x = (uncovered & -uncovered).bit_length() - 1
        for clique in cliques_with(x, uncovered):
            mask = sum(1 << y for y in clique)
            chosen.append(clique)
            if cover(uncovered & ~mask):
                return True
            chosen.pop()
        return False

    try:
        ok = cover(full)
    except _Budget:
        return SearchResult(EXHAUSTED, nodes)
    if not ok:
        return SearchResult(NONE, nodes)
    return SearchResult(FOUND, nodes, Spread.from_cliques(g.v, chosen))


@dataclass(frozen=True)
class RemovalResult:
    graph: Graph
    before: SrgParams | NotSrg | None
    after: SrgParams | NotSrg | None
    after_type: SrgType | None
    drg: IntersectionArray | None
    note: str


def _params_or_none(g: Graph) -> SrgParams | NotSrg | None:
    try:
        return srg_params(g)
    except PreconditionError:
        return None


def remove_spread(g: Graph, spread: Spread) -> RemovalResult:
    """Delete the spread's clique edges from g and classify what remains."""
    sg = spread.graph()
    if sg.v != g.v:
        raise PreconditionError("spread on a different vertex set")
    if not sg.is_subgraph_of(g):
        x, y = next((a, b) for a, b in sg.edges() if not g.has_edge(a, b))
        raise PreconditionError(f"spread edge ({x},{y}) is not an edge of the graph")
    rest = g.difference(sg)
    before = _params_or_none(g)
    after = _params_or_none(rest)
    after_type = classify_type(after) if isinstance(after, SrgParams) else None
    before_type = classify_type(before) if isinstance(before, SrgParams) else None

    notes = []
    if before_type is not None and before_type.is_ls and spread.is_square and rest.edge_count:
        if after_type is None or not after_type.is_ls:
            raise TheoremFalsified(f"removing a square spread from {before} left {after}")
        notes.append(f"strictly-LS before and after: {before_type} -> {after_type}")
    drg = None
    if not isinstance(after, SrgParams):
        try:
            drg = drg_array(rest)
        except DisconnectedGraphError:
            drg = None
        notes.append(f"remainder is not strongly regular; distance-regular: {drg if drg else 'no'}")
    else:
        notes.append(f"remainder {after} type={after_type}")
    return RemovalResult(rest, before, after, after_type, drg, "; ".join(notes))


def find_clique(g: Graph, size: int, limit: int | None = None) -> SearchResult:
    """Decide whether g has a clique of the given size (branch and bound).

    Candidates are coloured greedily in vertex order; a branch is cut when the
    current clique plus the colour bound cannot reach the target.
    """
    limit = default_budget() if limit is None else limit
    if size <= 0:
        return SearchResult(FOUND, 0, [])
    nbr = _bitsets(g)
    nodes = 0

    def colour(cand: int) -> list[tuple[int, int]]:
        # returns (vertex, colour bound) sorted by increasing colour
        order = []
        uncoloured = cand
        c = 0
        while uncoloured:
            c += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                x = low.bit_length() - 1
                avail &= ~low & ~nbr[x]
                uncoloured &= ~low
                order.append((x, c))
        return order

    def expand(clique: list[int], cand: int) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise _Budget
        if len(clique) == size:
            return list(clique)
        order = colour(cand)
        for x, c in reversed(order):
            if len(clique) + c < size:
                return None
            clique.append(x)
            hit = expand(clique, cand & nbr[x])
            if hit is not None:
                return hit
            clique.pop()
            cand &= ~(1 << x)
        return None

    try:
        hit = expand([], (1 << g.v) - 1)
    except _Budget:
        return SearchResult(EXHAUSTED, nodes)
    if hit is None:
        return SearchResult(NONE, nodes)
    return SearchResult(FOUND, nodes, sorted(hit))


def fission_by_spreads(s: Scheme, relation: int, spreads: Sequence[Spread]) -> Scheme | Violation:
    """Split a relation into the given edge-disjoint spreads plus what remains.

    Classes: the other relations in their original order, then the spreads,
    then the remainder of the split relation (omitted if empty).
    """
    if not 1 <= relation <= s.d:
        raise PreconditionError(f"relation {relation} outside 1..{s.d}")
    graphs = [s.graph(i) for i in range(1, s.d + 1) if i != relation]
    rest = s.graph(relation)
    for idx, sp in enumerate(spreads):
        sg = sp.graph()
        if not sg.is_subgraph_of(rest):
            raise PreconditionError(f"spread {idx} is not inside the remaining part of relation {relation}")
        graphs.append(sg)
        rest = rest.difference(sg)
    if rest.edge_count:
        graphs.append(rest)
    return scheme_verify(ColorMatrix.from_graphs(graphs))


# ---------------------------------------------------------------------------
# spreads in the distance-3 graph of the Brouwer-Pasechnik graph
# vertex (u, u') has index enc(u) * q^3 + enc(u')


def bp_vertex(q: int, u: Sequence[int], u2: Sequence[int]) -> int:
    f = gf(q)
    return encode_vector(f, u) * q**3 + encode_vector(f, u2)


def bp_coordinates(q: int, x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    f = gf(q)
    hi, lo = divmod(x, q**3)
    return tuple(decode_vector(f, hi, 3)), tuple(decode_vector(f, lo, 3))


def bp_s0(q: int) -> Spread:
    """Cliques with constant first coordinate."""
    n = q**3
    return Spread(n, tuple(x // n for x in range(n * n)))


def bp_spread_family(q: int, clique: Sequence[int]) -> list[Spread]:
    """S_0 followed by S_alpha, alpha in GF(q)^*, built from a clique C = {(w, phi(w))}."""
    f = gf(q)
    n = q**3
    if len(clique) != n:
        raise PreconditionError(f"clique must have {n} vertices, got {len(clique)}")
    phi: dict[tuple[int, ...], tuple[int, ...]] = {}
    for x in clique:
        w, w2 = bp_coordinates(q, x)
        if w in phi:
            raise PreconditionError(f"first coordinate {w} repeated: clique does not define a bijection")
        phi[w] = w2
    if len(set(phi.values())) != n:
        raise PreconditionError("second coordinates repeat: phi is not a bijection")
    # distinct first coordinates: distance 3 iff (w2' - w2) . (w' - w) != 0
    pts = list(phi.items())
    for i, (w, w2) in enumerate(pts):
        for u, u2 in pts[i + 1 :]:
            if dot(f, vec_sub(f, u2, w2), vec_sub(f, u, w)) == 0:
                raise PreconditionError(f"vertices {bp_vertex(q, w, w2)} and {bp_vertex(q, u, u2)} are not at distance 3")

    spreads = [bp_s0(q)]
    for alpha in range(1, q):
        # alpha runs over the field elements 1..q-1 in encoding order
        assignment = [0] * (n * n)
        for y_idx in range(n):
            y = decode_vector(f, y_idx, 3)
            for w, w2 in phi.items():
                assignment[bp_vertex(q, w, vec_add(f, vec_scale(f, alpha, w2), y))] = y_idx
        cliques = [[] for _ in range(n)]
        for x, c in enumerate(assignment):
            cliques[c].append(x)
        spreads.append(Spread.from_cliques(n * n, cliques))

    # cliques from different spreads meet in exactly one vertex
    for a in range(len(spreads)):
        for b in range(a + 1, len(spreads)):
            la = np.asarray(spreads[a].assignment)
            lb = np.asarray(spreads[b].assignment)
            meet = np.zeros((n, n), dtype=np.int64)
            np.add.at(meet, (la, lb), 1)
            if not (meet == 1).all():
                raise TheoremFalsified(f"spreads {a} and {b} have cliques not meeting in exactly one vertex")
    return spreads
