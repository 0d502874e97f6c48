"""Exact integer linear algebra: Smith normal form, cokernels, cycle bases.

Everything here works over Python's arbitrary-precision integers; no
floating point is ever used.  All values are immutable and all functions
are pure, so the module is safe to use from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DisconnectedGraph


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major as a flat tuple."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix(self.rows, other.cols, tuple(x for r in out for x in r))


@dataclass(frozen=True)
class SmithForm:
    """Diagonalization ``left * a * right == diag`` by unimodular transforms.

    ``diagonal`` has length ``min(rows, cols)``; each entry is non-negative,
    divides the next, and zeros trail.
    """

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def _egcd(p: int, q: int) -> tuple[int, int, int]:
    """g, x, y with x*p + y*q = g = gcd(p, q) >= 0."""
    if q == 0:
        return (abs(p), 1 if p >= 0 else -1, 0)
    g, x, y = _egcd(q, p % q)
    return (g, y, x - (p // q) * y)


def snf(m: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivot selection: smallest absolute nonzero entry of the working
    submatrix, ties broken in row-major order.  Rows and columns are
    cleared with extended-gcd combinations (determinant-one 2x2 blocks),
    which keeps the transform entries from blowing up; the whole
    procedure is deterministic.
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    left = IntMatrix.identity(nr).to_rows()
    right = IntMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in right:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        ad, as_ = a[dst], a[src]
        for k in range(nc):
            ad[k] += q * as_[k]
        ld, ls = left[dst], left[src]
        for k in range(nr):
            ld[k] += q * ls[k]

    def gcd_rows(t, i):
        # Replace rows (t, i) by a unimodular combination putting
        # gcd(a[t][t], a[i][t]) at (t, t) and 0 at (i, t).
        p, b = a[t][t], a[i][t]
        if b % p == 0:
            add_row(i, t, -(b // p))
            return
        g, x, y = _egcd(p, b)
        u, v = -(b // g), p // g  # det [[x, y], [u, v]] = 1
        for mat in (a, left):
            rt, ri = mat[t], mat[i]
            for k in range(len(rt)):
                rt[k], ri[k] = x * rt[k] + y * ri[k], u * rt[k] + v * ri[k]

    def gcd_cols(t, j):
        p, b = a[t][t], a[t][j]
        if b % p == 0:
            q = -(b // p)
            for r in a:
                r[j] += q * r[t]
            for r in right:
                r[j] += q * r[t]
            return
        g, x, y = _egcd(p, b)
        u, v = -(b // g), p // g
        for mat in (a, right):
            for r in mat:
                r[t], r[j] = x * r[t] + y * r[j], u * r[t] + v * r[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    def find_pivot(t):
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                v = row[j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best[1], best[2]
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(nr, nc):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    gcd_rows(t, i)
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    gcd_cols(t, j)
            # Column clearing can repopulate the pivot column; |pivot|
            # shrinks to a proper divisor whenever that happens, so the
            # alternation terminates.
            if all(a[i][t] == 0 for i in range(t + 1, nr)):
                break
        # Divisibility sweep: the pivot must divide every remaining entry.
        stray = None
        for i in range(t + 1, nr):
            row = a[i]
            for j in range(t + 1, nc):
                if row[j] % a[t][t] != 0:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            add_row(t, stray, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    diag = []
    for k in range(min(nr, nc)):
        diag.append(a[k][k] if k < t else 0)
    return SmithForm(
        tuple(diag),
        IntMatrix.from_rows(left) if nr else IntMatrix(0, 0, ()),
        IntMatrix.from_rows(right) if nc else IntMatrix(0, 0, ()),
    )


def cokernel_abelian_group(m: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """Cokernel of the column lattice acting on ``Z^rows``.

    Rows index generators and columns index relations, so the result is
    ``Z^rows / span(columns)``: a free rank plus invariant factors > 1.
    """
    form = snf(m)
    rank = sum(1 for d in form.diagonal if d != 0)
    torsion = tuple(d for d in form.diagonal if d > 1)
    return m.rows - rank, torsion


def _union_find_components(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps


def cycle_basis(
    num_vertices: int, edges: Sequence[tuple[int, int]]
) -> list[list[tuple[int, int]]]:
    """Fundamental cycles of a connected multigraph.

    The spanning tree grows lowest-edge-index-first.  For each non-tree
    edge ``e = (u, v)`` the cycle is the tree path ``u -> v`` followed by
    ``e`` traversed backwards, recorded as ``(edge index, sign)`` pairs
    where sign +1 means traversal along the stored ``(u, v)`` direction.
    Self-loops and parallel edges are allowed.
    """
    if num_vertices == 0:
        raise DisconnectedGraph("empty vertex set")
    if _union_find_components(num_vertices, edges) != 1:
        raise DisconnectedGraph(
            f"graph with {num_vertices} vertices and {len(edges)} edges is not connected"
        )

    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: list[int] = []
    non_tree: list[int] = []
    adjacency: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(num_vertices)}
    for idx, (u, v) in enumerate(edges):
        ru, rv = find(u), find(v)
        if ru != rv and u != v:
            parent[ru] = rv
            tree.append(idx)
            adjacency[u].append((v, idx, +1))
            adjacency[v].append((u, idx, -1))
        else:
            non_tree.append(idx)

    def tree_path(src: int, dst: int) -> list[tuple[int, int]]:
        # BFS in the tree; the tree is small so this is fine.
        prev: dict[int, tuple[int, int, int]] = {}
        queue = [src]
        seen = {src}
        while queue:
            x = queue.pop(0)
            if x == dst:
                break
            for (y, idx, sign) in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    prev[y] = (x, idx, sign)
                    queue.append(y)
        path: list[tuple[int, int]] = []
        x = dst
        while x != src:
            px, idx, sign = prev[x]
            path.append((idx, sign))
            x = px
        path.reverse()
        return path

    cycles = []
    for idx in non_tree:
        u, v = edges[idx]
        cycles.append(tree_path(u, v) + [(idx, -1)])
    return cycles
