"""Tanner graph girth: measurement, QC structural limits, and the
protograph tree bound.

``measure_girth`` runs a breadth-first search from every variable node
with parent-edge exclusion; the first non-tree edge seen from source s
closes a cycle of length d(u) + d(w) + 1, and the minimum over sources
is exact because a source on a shortest cycle detects it.  Searches are
pruned once they pass half of the best cycle found so far.

``qc_girth_limit`` reports the two structural ceilings of single-step QC
lifts: any protomatrix entry of 3 or more caps the girth of every lift
at 6, and an all-ones 2x3 or 3x2 submatrix caps it at 12.

``tree_girth_bound`` uses the neighborhood-tree argument.  Convention
used here: for each protograph node type (variable or check), grow the
type-aware neighborhood tree, where a node's children are all incident
protograph edges except the one back to its parent, counted with
parallel-edge multiplicity.  In any lift with expansion factor N whose
girth exceeds 2d, the radius-d ball around a node embeds injectively, so
the cumulative number of tree nodes of each variable type within depth d
can be at most N (the number of copies of that type).  The bound is
2 * d, minimized over root types, where d is the first depth at which
some variable type overflows.  The expansion factor is the block length
divided by the number of transmitted (unpunctured) columns.  On the
AR4JA protomatrices this convention gives identical values whether the
base or the once-lifted protomatrix is used at the matching factor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import inf
from typing import Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .qc_matrix import WeightMatrix, index_set

__all__ = ["TannerGraph", "measure_girth", "qc_girth_limit", "tree_girth_bound"]


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite adjacency built from a binary parity-check matrix."""

    var_adj: tuple[tuple[int, ...], ...]
    check_adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_binary(cls, h: np.ndarray) -> "TannerGraph":
        h = np.asarray(h)
        if h.ndim != 2:
            raise ShapeError("parity-check matrix must be two dimensional")
        if not np.isin(h, (0, 1)).all():
            raise ShapeError("parity-check entries must be 0 or 1")
        checks, cols = np.nonzero(h)
        var_adj: list[list[int]] = [[] for _ in range(h.shape[1])]
        check_adj: list[list[int]] = [[] for _ in range(h.shape[0])]
        for j, i in zip(checks.tolist(), cols.tolist()):
            var_adj[i].append(j)
            check_adj[j].append(i)
        return cls(
            tuple(tuple(a) for a in var_adj), tuple(tuple(a) for a in check_adj)
        )

    @property
    def variable_count(self) -> int:
        return len(self.var_adj)

    @property
    def check_count(self) -> int:
        return len(self.check_adj)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.var_adj)


def measure_girth(h: np.ndarray | TannerGraph) -> int | float:
    """Length of the shortest cycle; +inf for forests."""
    graph = h if isinstance(h, TannerGraph) else TannerGraph.from_binary(h)
    nv = graph.variable_count
    total = nv + graph.check_count
    adj: list[Sequence[int]] = [
        tuple(nv + j for j in neigh) for neigh in graph.var_adj
    ]
    adj.extend(tuple(i for i in neigh) for neigh in graph.check_adj)

    best: int | float = inf
    dist = [-1] * total
    parent = [-1] * total
    for source in range(nv):
        if len(graph.var_adj[source]) < 2:
            continue  # a cycle through a degree<2 node is impossible
        touched = [source]
        dist[source] = 0
        parent[source] = -1
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 2 >= best:
                break
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if dist[w] >= 0:
                    cycle = du + dist[w] + 1
                    if cycle < best:
                        best = cycle
                else:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
        for t in touched:
            dist[t] = -1
            parent[t] = -1
    return best


def qc_girth_limit(a: WeightMatrix) -> int | None:
    """Structural girth ceiling of every single-step QC lift of ``a``.

    6 when some entry is at least 3; otherwise 12 when some all-ones
    2x3 or 3x2 submatrix exists (entries >= 1); otherwise None.
    """
    if any(v >= 3 for row in a.entries for v in row):
        return 6
    supports_rows = [
        sum(1 << i for i, v in enumerate(row) if v >= 1) for row in a.entries
    ]
    for j1 in range(a.J):
        for j2 in range(j1 + 1, a.J):
            if (supports_rows[j1] & supports_rows[j2]).bit_count() >= 3:
                return 12
    supports_cols = [
        sum(1 << j for j in range(a.J) if a[j, i] >= 1) for i in range(a.L)
    ]
    for i1 in range(a.L):
        for i2 in range(i1 + 1, a.L):
            if (supports_cols[i1] & supports_cols[i2]).bit_count() >= 3:
                return 12
    return None


def _tree_overflow_depth(
    a: WeightMatrix, root_side: str, root_type: int, capacity: int, max_depth: int
) -> int | None:
    """First depth at which some variable type's cumulative tree count
    exceeds ``capacity``, or None when the tree dies out first.

    The frontier alternates between edge-count tables vc[i][j] (tree
    edges from a variable of type i down to a check of type j) and
    cv[j][i]; a child consumes one of its parent's parallel edges, hence
    the ``- 1`` on the matching type.
    """
    J, L = a.J, a.L
    var_cum = [0] * L
    if root_side == "v":
        var_cum[root_type] = 1
        if var_cum[root_type] > capacity:
            return 0
        vc = [[0] * J for _ in range(L)]
        for j in range(J):
            vc[root_type][j] = a[j, root_type]
        frontier_kind, frontier = "vc", vc
    else:
        cv = [[0] * L for _ in range(J)]
        for i in range(L):
            cv[root_type][i] = a[root_type, i]
        frontier_kind, frontier = "cv", cv

    depth = 0
    while depth < max_depth:
        depth += 1
        alive = False
        if frontier_kind == "vc":
            # Arrivals at checks; spawn edges back down to variables.
            cv = [[0] * L for _ in range(J)]
            for i in range(L):
                row = frontier[i]
                for j in range(J):
                    e = row[j]
                    if not e:
                        continue
                    alive = True
                    target = cv[j]
                    for i2 in range(L):
                        fanout = a[j, i2] - (1 if i2 == i else 0)
                        if fanout > 0:
                            target[i2] += e * fanout
            frontier_kind, frontier = "cv", cv
            if not alive:
                return None
        else:
            # Arrivals at variables; count them, spawn edges to checks.
            vc = [[0] * J for _ in range(L)]
            for j in range(J):
                row = frontier[j]
                for i in range(L):
                    e = row[i]
                    if not e:
                        continue
                    alive = True
                    var_cum[i] += e
                    target = vc[i]
                    for j2 in range(J):
                        fanout = a[j2, i] - (1 if j2 == j else 0)
                        if fanout > 0:
                            target[j2] += e * fanout
            frontier_kind, frontier = "vc", vc
            if not alive:
                return None
            if any(v > capacity for v in var_cum):
                return depth
    return None


def tree_girth_bound(
    a: WeightMatrix, block_length: int, puncture: Sequence[int] = ()
) -> int | float:
    """Neighborhood-tree girth bound for lifts of ``a`` at a block length.

    ``block_length`` counts transmitted bits, so the expansion factor is
    block_length / (L - |puncture|), which must be integral.  Applies to
    every lift with that factor, QC or not; +inf when no neighborhood
    tree outgrows the graph (forest protographs).
    """
    p = index_set(puncture, a.L, "puncture column")
    transmitted = a.L - len(p)
    if block_length <= 0:
        raise DomainError("block length must be positive")
    if block_length % transmitted:
        raise DomainError(
            f"block length {block_length} is not a multiple of the"
            f" {transmitted} transmitted columns"
        )
    factor = block_length // transmitted
    # Cumulative per-type counts grow by at least one every two levels
    # while the frontier is alive, so overflow happens within this bound
    # if it happens at all.
    max_depth = 2 * factor * a.L + 4
    best: int | float = inf
    for side, count in (("v", a.L), ("c", a.J)):
        for t in range(count):
            d = _tree_overflow_depth(a, side, t, factor, max_depth)
            if d is not None and 2 * d < best:
                best = 2 * d
    return best
