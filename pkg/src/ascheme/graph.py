"""Simple undirected graphs stored as bit-packed adjacency rows."""

from __future__ import annotations

from typing import Iterable

import numpy as np

_WORD = 64
# rows of the left operand processed per vectorised block in count products
_BLOCK_CELLS = 1 << 22


def pack_rows(adj: np.ndarray) -> np.ndarray:
    """Pack a boolean v x v matrix into a (v, ceil(v/64)) uint64 array."""
    adj = np.asarray(adj, dtype=bool)
    v = adj.shape[1]
    words = -(-v // _WORD)
    padded = np.zeros((adj.shape[0], words * _WORD), dtype=bool)
    padded[:, :v] = adj
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.uint64).reshape(adj.shape[0], words)


def unpack_rows(rows: np.ndarray, v: int) -> np.ndarray:
    bytes_ = rows.view(np.uint8).reshape(rows.shape[0], -1)
    return np.unpackbits(bytes_, axis=1, count=v, bitorder="little").astype(bool)


def count_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """counts[x, y] = |row_x(left) & row_y(right)| for packed row arrays.

    With symmetric 01 matrices this is exactly the integer product
    ``L @ R``: entry (x, y) counts the z with L[x, z] = R[z, y] = 1.
    """
    v, words = left.shape
    out = np.empty((v, right.shape[0]), dtype=np.int32)
    block = max(1, _BLOCK_CELLS // max(1, right.shape[0] * words))
    for start in range(0, v, block):
        chunk = left[start : start + block]
        anded = chunk[:, None, :] & right[None, :, :]
        out[start : start + block] = np.bitwise_count(anded).sum(axis=2, dtype=np.int32)
    return out


class Graph:
    """A simple graph on vertices 0..v-1 with packed boolean rows."""

    __slots__ = ("v", "rows")

    def __init__(self, v: int, rows: np.ndarray):
        self.v = v
        rows = np.ascontiguousarray(rows, dtype=np.uint64)
        rows.setflags(write=False)
        self.rows = rows

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        adj = np.asarray(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix must be symmetric")
        if adj.diagonal().any():
            raise ValueError("graph has loops")
        return cls(adj.shape[0], pack_rows(adj))

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = np.zeros((v, v), dtype=bool)
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            adj[a, b] = adj[b, a] = True
        return cls(v, pack_rows(adj))

    @classmethod
    def empty(cls, v: int) -> Graph:
        return cls(v, pack_rows(np.zeros((v, v), dtype=bool)))

    @classmethod
    def complete(cls, v: int) -> Graph:
        return cls.from_adjacency(~np.eye(v, dtype=bool))

    def adjacency(self) -> np.ndarray:
        return unpack_rows(self.rows, self.v)

    def int_adjacency(self) -> np.ndarray:
        return self.adjacency().astype(np.int64)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.v == other.v and np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        return hash((self.v, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(v={self.v}, edges={self.edge_count})"

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)

    @property
    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def regular_degree(self) -> int | None:
        deg = self.degrees()
        if deg.size and (deg == deg[0]).all():
            return int(deg[0])
        return None

    def has_edge(self, a: int, b: int) -> bool:
        return bool((int(self.rows[a, b // _WORD]) >> (b % _WORD)) & 1)

    def neighbors(self, a: int) -> np.ndarray:
        return np.flatnonzero(unpack_rows(self.rows[a : a + 1], self.v)[0])

    def edges(self) -> list[tuple[int, int]]:
        adj = self.adjacency()
        xs, ys = np.nonzero(np.triu(adj, 1))
        return list(zip(xs.tolist(), ys.tolist()))

    def common_neighbors(self) -> np.ndarray:
        """The matrix A^2 (walks of length two)."""
        return count_product(self.rows, self.rows)

    def product_counts(self, other: Graph) -> np.ndarray:
        return count_product(self.rows, other.rows)

    def complement(self) -> Graph:
        adj = ~self.adjacency()
        np.fill_diagonal(adj, False)
        return Graph(self.v, pack_rows(adj))

    def union(self, other: Graph) -> Graph:
        self._same_order(other)
        return Graph(self.v, self.rows | other.rows)

    def difference(self, other: Graph) -> Graph:
        self._same_order(other)
        return Graph(self.v, self.rows & ~other.rows)

    def intersection(self, other: Graph) -> Graph:
        self._same_order(other)
        return Graph(self.v, self.rows & other.rows)

    def is_subgraph_of(self, other: Graph) -> bool:
        self._same_order(other)
        return not (self.rows & ~other.rows).any()

    def is_edge_disjoint(self, other: Graph) -> bool:
        self._same_order(other)
        return not (self.rows & other.rows).any()

    def _same_order(self, other: Graph) -> None:
        if self.v != other.v:
            raise ValueError(f"vertex counts differ: {self.v} vs {other.v}")

    def distance_matrix(self) -> np.ndarray:
        """All-pairs distances; -1 marks unreachable pairs."""
        v = self.v
        adj = self.adjacency()
        dist = np.full((v, v), -1, dtype=np.int64)
        np.fill_diagonal(dist, 0)
        reached = np.eye(v, dtype=bool)
        frontier = reached.copy()
        a32 = adj.astype(np.float32)
        step = 0
        while frontier.any():
            step += 1
            # 0/1 float products of size <= v stay exact in float32
            nxt = (frontier.astype(np.float32) @ a32) > 0
            nxt &= ~reached
            dist[nxt] = step
            reached |= nxt
            frontier = nxt
        return dist

    def is_connected(self) -> bool:
        return bool((self.distance_matrix()[0] >= 0).all())
