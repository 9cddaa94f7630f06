"""Undirected simple graphs in CSR form, tuned for neighbourhood-degree scans.

The central object of the package is the sorted list of neighbour degrees of
a node (its neighbourhood degree sequence, NDS).  Adjacency is therefore kept
as a CSR pair (indptr, indices) with neighbour ids sorted inside each row so
that NDS extraction is a single gather plus sort over a contiguous slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "NdsMatrix",
    "build_graph",
    "nds",
    "nds_matrix",
    "degree_support_d2",
    "component_count",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Node ids are dense 0..n-1.  ``indices[indptr[i]:indptr[i+1]]`` holds the
    ascending neighbour ids of node ``i``.  ``labels`` optionally remembers
    the original labels of ingested files (index = dense id).
    """

    n: int
    m: int
    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        for arr in (self.indptr, self.indices, self.degrees):
            arr.setflags(write=False)

    @property
    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * self.m / (self.n * (self.n - 1))

    def neighbors(self, i: int) -> np.ndarray:
        if not 0 <= i < self.n:
            raise ValueError(f"node id {i} out of range for graph on {self.n} nodes")
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        row = self.neighbors(i)
        pos = np.searchsorted(row, j)
        return pos < row.size and row[pos] == j

    def edge_array(self) -> np.ndarray:
        """Canonical (m, 2) edge array: u < v, lexicographically ascending."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = self.indices > rows
        return np.column_stack((rows[keep], self.indices[keep]))


@dataclass(frozen=True)
class NdsMatrix:
    """Row-stack of the ascending NDS of every node with a given degree.

    Rows are ordered by ascending node id; shape is (row_count, degree).
    """

    degree: int
    rows: np.ndarray

    @property
    def row_count(self) -> int:
        return self.rows.shape[0]


def build_graph(edges, n_hint: int | None = None) -> Graph:
    """Validate and canonicalise an edge collection into a :class:`Graph`.

    Self-loops are dropped, duplicate/reversed pairs collapse to one edge.
    ``n_hint`` fixes the node count (retaining trailing isolated nodes);
    otherwise n = max id + 1.
    """
    uv = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if uv.size == 0:
        if n_hint is None:
            raise ValueError("empty graph: no edges and no n_hint")
        uv = uv.reshape(0, 2)
    if uv.ndim != 2 or uv.shape[1] != 2:
        raise ValueError("edges must be pairs")
    if uv.size and uv.min() < 0:
        raise ValueError("node ids must be non-negative")
    max_id = int(uv.max()) if uv.size else -1
    if n_hint is not None:
        if n_hint < 1:
            raise ValueError("empty graph: n_hint must be positive")
        if max_id >= n_hint:
            raise ValueError(f"node id {max_id} out of range for n_hint={n_hint}")
        n = int(n_hint)
    else:
        n = max_id + 1
    keep = uv[:, 0] != uv[:, 1]
    uv = uv[keep]
    lo = np.minimum(uv[:, 0], uv[:, 1])
    hi = np.maximum(uv[:, 0], uv[:, 1])
    codes = np.unique(lo * np.int64(n) + hi)
    return _from_pair_codes(n, codes)


def _from_pair_codes(n: int, codes: np.ndarray) -> Graph:
    """Assemble a Graph from unique sorted pair codes lo*n+hi (lo<hi)."""
    lo = codes // n
    hi = codes % n
    return from_unique_pairs(n, lo, hi)


def from_unique_pairs(n: int, lo: np.ndarray, hi: np.ndarray, labels=None) -> Graph:
    """Fast constructor for edges already unique with lo < hi.

    Generators use this to skip the dedup pass of :func:`build_graph`.
    """
    m = lo.size
    rows = np.concatenate((lo, hi))
    cols = np.concatenate((hi, lo))
    degrees = np.bincount(rows, minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    order = np.lexsort((cols, rows))
    indices = cols[order]
    return Graph(n=int(n), m=int(m), indptr=indptr, indices=indices,
                 degrees=degrees, labels=labels)


def nds(g: Graph, i: int) -> np.ndarray:
    """Neighbourhood degree sequence of node i, ascending."""
    return np.sort(g.degrees[g.neighbors(i)])


def degree_support_d2(g: Graph) -> np.ndarray:
    """Ascending degrees k >= 1 held by at least two nodes."""
    counts = np.bincount(g.degrees)
    ks = np.flatnonzero(counts >= 2)
    return ks[ks >= 1]


def nds_matrix(g: Graph, k: int) -> NdsMatrix:
    """Stack the NDS rows of every degree-k node (ascending node id)."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    nodes = np.flatnonzero(g.degrees == k)
    if k == 0 or nodes.size == 0:
        return NdsMatrix(degree=k, rows=np.empty((0, k), dtype=np.int64))
    gather = g.indptr[nodes][:, None] + np.arange(k, dtype=np.int64)[None, :]
    rows = g.degrees[g.indices[gather]]
    rows.sort(axis=1)
    return NdsMatrix(degree=k, rows=rows)


def component_count(g: Graph) -> int:
    """Number of connected components (isolated nodes count individually)."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    if g.n == 0:
        return 0
    data = np.ones(g.indices.size, dtype=np.int8)
    a = csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))
    count, _ = connected_components(a, directed=False)
    return int(count)
