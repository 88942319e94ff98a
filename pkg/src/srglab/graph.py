"""Dense simple graphs with bit-packed adjacency rows.

Vertices are the integers ``0..n-1``.  Each row of the adjacency matrix is
stored packed (8 vertices per byte) so that the codegree of a vertex set is
a row intersection followed by a popcount.  All-pairs codegree tables go
through a float32 matrix product instead, which is exact for n < 2**24.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

MAX_VERTICES = 20000

# rows per block when forming codegree tables by matrix product
_BLOCK = 1024


class GraphFormatError(ValueError):
    """Malformed edge-list input; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must lie in 1..{MAX_VERTICES}, got {n}")


class Graph:
    """Immutable dense undirected simple graph."""

    def __init__(self, adjacency: np.ndarray):
        adj = np.asarray(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        _check_order(adj.shape[0])
        if adj.diagonal().any():
            u = int(np.flatnonzero(adj.diagonal())[0])
            raise ValueError(f"self-loop at vertex {u}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency is not symmetric")
        self.n = adj.shape[0]
        rows = np.packbits(adj, axis=1)
        rows.setflags(write=False)
        self.rows = rows

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        _check_order(n)
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge ({u}, {v}) is a self-loop")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @property
    def adj(self) -> np.ndarray:
        """Full boolean adjacency matrix (a fresh unpacked copy)."""
        return self._sub(None, None)

    def _sub(self, A, B) -> np.ndarray:
        rows = self.rows if A is None else self.rows[A]
        block = np.unpackbits(rows, axis=1, count=self.n).view(bool)
        return block if B is None else block[:, B]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        return hash((self.n, self.rows.tobytes()))

    @cached_property
    def num_edges(self) -> int:
        return int(np.bitwise_count(self.rows).sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u, v >> 3] & (0x80 >> (v & 7)))

    def neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(self._sub([u], None)[0])

    def complement(self) -> "Graph":
        comp = ~self.adj
        np.fill_diagonal(comp, False)
        return Graph(comp)

    # -- vertex sets --------------------------------------------------

    def vertex_set(self, vs: Iterable[int]) -> np.ndarray:
        """Validated sorted index array for a vertex set (duplicates dropped)."""
        arr = np.unique(np.fromiter((int(v) for v in vs), dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= self.n):
            bad = arr[0] if arr[0] < 0 else arr[-1]
            raise ValueError(f"vertex {bad} outside 0..{self.n - 1}")
        return arr

    def mask(self, vs: Iterable[int]) -> np.ndarray:
        """Packed bit mask of a vertex set, comparable with adjacency rows."""
        m = np.zeros(self.n, dtype=bool)
        m[self.vertex_set(vs)] = True
        return np.packbits(m)

    # -- degrees and codegrees ----------------------------------------

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1, dtype=np.int64)

    def degree(self, u: int) -> int:
        return int(np.bitwise_count(self.rows[u]).sum())

    def degree_in(self, u: int, Y: Iterable[int]) -> int:
        return int(np.bitwise_count(self.rows[u] & self.mask(Y)).sum())

    def _common(self, R: Iterable[int]) -> np.ndarray:
        R = self.vertex_set(R)
        if R.size == 0:
            raise ValueError("codegree of the empty set is not accepted")
        return np.bitwise_and.reduce(self.rows[R], axis=0)

    def codegree(self, R: Iterable[int]) -> int:
        """Number of vertices adjacent to every vertex of ``R``."""
        return int(np.bitwise_count(self._common(R)).sum())

    def codegree_in(self, R: Iterable[int], Y: Iterable[int]) -> int:
        return int(np.bitwise_count(self._common(R) & self.mask(Y)).sum())

    def codegree_matrix(self, A: Sequence[int] | None = None,
                        Y: Sequence[int] | None = None,
                        A2: Sequence[int] | None = None) -> np.ndarray:
        """Table of pairwise codegrees ``C[i, j] = |Γ(A[i]) ∩ Γ(A2[j]) ∩ Y|``.

        ``A`` defaults to all vertices, ``A2`` to ``A`` and ``Y`` to all
        vertices.  Diagonal entries (when ``A2`` is ``A``) are degrees into Y.
        """
        A = np.arange(self.n) if A is None else self.vertex_set(A)
        A2 = A if A2 is None else self.vertex_set(A2)
        Y = np.arange(self.n) if Y is None else self.vertex_set(Y)
        right = self._sub(A2, Y).astype(np.float32).T
        out = np.empty((A.size, A2.size), dtype=np.int64)
        for lo in range(0, A.size, _BLOCK):
            left = self._sub(A[lo:lo + _BLOCK], Y).astype(np.float32)
            out[lo:lo + _BLOCK] = np.rint(left @ right).astype(np.int64)
        return out

    # -- pair statistics ----------------------------------------------

    def _disjoint_pair(self, A, B) -> tuple[np.ndarray, np.ndarray]:
        A, B = self.vertex_set(A), self.vertex_set(B)
        if A.size == 0 or B.size == 0:
            raise ValueError("vertex sets must be nonempty")
        if np.intersect1d(A, B).size:
            raise ValueError("vertex sets must be disjoint")
        return A, B

    def biadjacency(self, A, B) -> np.ndarray:
        return self._sub(self.vertex_set(A), self.vertex_set(B))

    def edges_between(self, A, B) -> int:
        A, B = self._disjoint_pair(A, B)
        return int(np.count_nonzero(self._sub(A, B)))

    def density(self, A, B) -> Fraction:
        A, B = self._disjoint_pair(A, B)
        return Fraction(int(np.count_nonzero(self._sub(A, B))), A.size * B.size)

    def induced_edge_count(self, A) -> int:
        A = self.vertex_set(A)
        if A.size == 0:
            raise ValueError("vertex set must be nonempty")
        return int(np.count_nonzero(self._sub(A, A))) // 2


# functional aliases -------------------------------------------------------

def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def complement(g: Graph) -> Graph:
    return g.complement()


def degree(g: Graph, u: int) -> int:
    return g.degree(u)


def degree_in(g: Graph, u: int, Y: Iterable[int]) -> int:
    return g.degree_in(u, Y)


def codegree(g: Graph, R: Iterable[int]) -> int:
    return g.codegree(R)


def codegree_in(g: Graph, R: Iterable[int], Y: Iterable[int]) -> int:
    return g.codegree_in(R, Y)


def edges_between(g: Graph, A, B) -> int:
    return g.edges_between(A, B)


def density(g: Graph, A, B) -> Fraction:
    return g.density(A, B)


def induced_edge_count(g: Graph, A) -> int:
    return g.induced_edge_count(A)


# edge-list files ----------------------------------------------------------

def parse_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are skipped."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("missing header 'n m'", 1)
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise GraphFormatError(f"expected header 'n m', got {header!r}", lineno) from None
    if m < 0:
        raise GraphFormatError("negative edge count", lineno)
    try:
        _check_order(n)
    except ValueError as exc:
        raise GraphFormatError(str(exc), lineno) from None
    body = lines[1:]
    if len(body) < m:
        last = body[-1][0] + 1 if body else lineno + 1
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}", last)
    if len(body) > m:
        raise GraphFormatError(f"trailing content after {m} edges", body[m][0])
    adj = np.zeros((n, n), dtype=bool)
    for lineno, ln in body:
        parts = ln.split()
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise GraphFormatError(f"expected 'u v', got {ln!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range in {ln!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {ln!r}", lineno)
        adj[u, v] = adj[v, u] = True
    return Graph(adj)


def read_edgelist(path: str | os.PathLike) -> Graph:
    return parse_edgelist(Path(path).read_text())


def format_edgelist(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write_edgelist(g: Graph, path: str | os.PathLike) -> None:
    atomic_write(path, format_edgelist(g))
