"""Shared generators and brute-force reference implementations.

Everything here is deliberately independent of the library's own
algorithms: permanents are permutation sums, bounds are plain
enumerations, and cycles are found by DFS.  These are the oracles the
package is tested against.
"""

from __future__ import annotations

import itertools
import random
from math import inf

import numpy as np

from qcdist.poly_ring import PolyResidue
from qcdist.qc_matrix import PolyMatrix, WeightMatrix


# ---------------------------------------------------------------------------
# Random instances


def random_residue(rng: random.Random, n: int, max_weight: int | None = None) -> PolyResidue:
    if max_weight is None:
        bits = rng.randrange(1 << n)
        return PolyResidue(n, bits)
    w = rng.randint(0, max_weight)
    exps = rng.sample(range(n), min(w, n))
    return PolyResidue.from_exponents(exps, n)


def random_poly_matrix(
    rng: random.Random,
    rows: int,
    cols: int,
    n: int,
    max_weight: int = 2,
    zero_chance: float = 0.3,
) -> PolyMatrix:
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < zero_chance:
                row.append(PolyResidue.zero(n))
            else:
                w = rng.randint(1, max_weight)
                row.append(PolyResidue.from_exponents(rng.sample(range(n), min(w, n)), n))
        out.append(tuple(row))
    return PolyMatrix(n, tuple(out))


def random_weight_matrix(
    rng: random.Random, rows: int, cols: int, max_entry: int = 3, zero_chance: float = 0.3
) -> WeightMatrix:
    return WeightMatrix.from_rows(
        [
            [0 if rng.random() < zero_chance else rng.randint(1, max_entry) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


# ---------------------------------------------------------------------------
# Brute-force permanents (permutation sums)


def perm_int_brute(rows) -> int:
    rows = [list(r) for r in rows]
    j = len(rows)
    total = 0
    for sigma in itertools.permutations(range(j)):
        p = 1
        for r in range(j):
            p *= rows[r][sigma[r]]
        total += p
    return total if j else 1


def perm_ring_brute(h: PolyMatrix) -> PolyResidue:
    j = h.J
    total = PolyResidue.zero(h.n)
    for sigma in itertools.permutations(range(j)):
        p = PolyResidue.one(h.n)
        for r in range(j):
            p = p * h[r, sigma[r]]
        total = total + p
    return total


# ---------------------------------------------------------------------------
# Brute-force bounds


def ref_bound_weight(a: WeightMatrix, puncture=(), removable=0) -> float:
    """Plain enumeration over (T, S) with permutation-sum permanents."""
    p = set(puncture)
    best = inf
    for t_size in range(removable + 1):
        for removed in itertools.combinations(range(a.J), t_size):
            keep_rows = [j for j in range(a.J) if j not in removed]
            for s in itertools.combinations(range(a.L), a.J + 1 - t_size):
                if t_size and not all(
                    all(a[t, i] == 0 for i in s) for t in removed
                ):
                    continue
                total = 0
                for i in s:
                    if i in p:
                        continue
                    cols = [c for c in s if c != i]
                    total += perm_int_brute(
                        [[a[j, c] for c in cols] for j in keep_rows]
                    )
                if 0 < total < best:
                    best = total
    return best


def ref_bound_poly(h: PolyMatrix, puncture=(), removable=0) -> float:
    p = set(puncture)
    best = inf
    for t_size in range(removable + 1):
        for removed in itertools.combinations(range(h.J), t_size):
            keep_rows = [j for j in range(h.J) if j not in removed]
            for s in itertools.combinations(range(h.L), h.J + 1 - t_size):
                ok = True
                for t in removed:
                    stacked = PolyMatrix(
                        h.n,
                        tuple(
                            [tuple(h[t, c] for c in s)]
                            + [tuple(h[j, c] for c in s) for j in keep_rows]
                        ),
                    )
                    if not perm_ring_brute(stacked).is_zero:
                        ok = False
                        break
                if not ok:
                    continue
                total = 0
                for i in s:
                    if i in p:
                        continue
                    cols = [c for c in s if c != i]
                    sub = PolyMatrix(
                        h.n, tuple(tuple(h[j, c] for c in cols) for j in keep_rows)
                    )
                    total += perm_ring_brute(sub).weight
                if 0 < total < best:
                    best = total
    return best


# ---------------------------------------------------------------------------
# Brute-force shortest cycle by DFS over simple paths


def girth_dfs(h: np.ndarray, max_len: int = 12) -> float:
    """Shortest cycle length found by DFS over simple paths up to max_len."""
    h = np.asarray(h)
    m, ncols = h.shape
    total = ncols + m
    adj: list[list[int]] = [[] for _ in range(total)]
    for j, i in zip(*np.nonzero(h)):
        adj[int(i)].append(ncols + int(j))
        adj[ncols + int(j)].append(int(i))
    best = inf

    def dfs(start: int, u: int, prev: int, depth: int, on_path: set):
        nonlocal best
        if depth >= best or depth >= max_len:
            return
        for w in adj[u]:
            if w == prev:
                continue
            if w == start and depth + 1 >= 3:
                if depth + 1 < best:
                    best = depth + 1
                continue
            if w in on_path or w < start:
                continue
            on_path.add(w)
            dfs(start, w, u, depth + 1, on_path)
            on_path.discard(w)

    for start in range(total):
        dfs(start, start, -1, 0, {start})
    return best
