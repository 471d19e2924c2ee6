"""Minimum-distance upper bounds for punctured QC codes.

Every bound scans column sets S and evaluates the weight of the codeword
that the permanent construction assigns to S (see ``codeword``), keeping
the smallest strictly positive value:

* ``bound_poly``: sum over i in S minus the puncture set of the weight
  of the ring permanent of H(x) with columns S minus i; |S| = J + 1.
* ``bound_weight``: same shape, but integer permanents of the weight
  matrix; valid when puncturing preserves code dimensionality, and never
  tighter than ``bound_poly`` on the matching H(x).
* ``*_rowremoval``: additionally delete a row set T (|S| + |T| = J + 1).
  For the polynomial variant a removed row must pass the stacking test
  of ``codeword.build_rowremoved_codeword``; for the weight variant the
  removed sub-rows restricted to S must be all zero.  T = {} is always
  included, so these are never looser than their plain counterparts.

Zero sums are discarded (min over the strictly positive values, plus
infinity when none exist), so an unreachable bound is reported as
infinite rather than silently replaced by the block length.

Determinism: candidates are enumerated in colexicographic order of S,
nested inside lexicographic order of T by ascending |T|; the first
candidate achieving the minimum is the witness.  Budgeted runs instead
draw S in ascending order of the summed column weights (a heuristic
ordering, flagged in the report).  Parallel runs partition the colex
rank space and merge by (value, rank), so output is identical for every
worker count.

Integer permanents take a compiled int64 fast path only when an exact
a-priori bound (product of row sums) proves overflow impossible;
otherwise the unbounded pure-Python path is used.  Both are the same
cofactor expansion and are checked against each other in the tests.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, inf
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _fastperm
from .errors import PreconditionError, ShapeError
from .qc_matrix import (
    PolyMatrix,
    WeightMatrix,
    _perm_int_rows,
    _perm_ring_bits,
    index_set,
    int_permanent_bound,
)

__all__ = [
    "BoundReport",
    "CostEstimate",
    "min_star",
    "bound_poly",
    "bound_weight",
    "bound_poly_rowremoval",
    "bound_weight_rowremoval",
    "bound_best",
    "estimate_cost",
    "iter_colex",
    "colex_rank",
    "colex_unrank",
]

# Largest number of distinct sub-permanents cached or tabulated per row set.
TABLE_CAP = 1 << 21
# Below this many subsets a parallel run is not worth the process spin-up.
PARALLEL_MIN_SUBSETS = 1 << 14

ORDER_COLEX = "colex"
ORDER_HEURISTIC = "column-weight-heuristic"

THEOREM_ORDER = ("weight", "poly", "weight-rowremoval", "poly-rowremoval")


def min_star(values: Iterable[float]) -> float:
    """Minimum over the strictly positive members; +inf when none."""
    best = inf
    for v in values:
        if 0 < v < best:
            best = v
    return best


@dataclass(frozen=True, slots=True)
class BoundReport:
    """Outcome of one bound evaluation.

    ``bound`` is a positive integer or +inf; when finite it equals the
    sum of ``witness_weight_terms``, the per-column contributions over
    the witness columns outside the puncture set.  ``exhaustive`` is
    true only when every admissible candidate was evaluated.
    """

    bound: int | float
    theorem: str
    witness_S: tuple[int, ...] | None
    witness_T: tuple[int, ...]
    witness_weight_terms: tuple[tuple[int, int], ...]
    subsets_examined: int
    exhaustive: bool
    ordering: str

    def to_dict(self) -> dict:
        return {
            "bound": self.bound if self.bound != inf else "unbounded by this method",
            "theorem": self.theorem,
            "witness_S": list(self.witness_S) if self.witness_S is not None else None,
            "witness_T": list(self.witness_T),
            "witness_weight_terms": [list(t) for t in self.witness_weight_terms],
            "subsets_examined": self.subsets_examined,
            "exhaustive": self.exhaustive,
            "ordering": self.ordering,
        }


# ---------------------------------------------------------------------------
# Subset enumeration


def iter_colex(universe: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(universe) in colexicographic order."""
    if k < 0 or k > universe:
        return
    if k == 0:
        yield ()
        return
    cur = list(range(k))
    while True:
        yield tuple(cur)
        j = 0
        while j < k:
            nxt = cur[j] + 1
            upper = cur[j + 1] if j + 1 < k else universe
            if nxt < upper:
                cur[j] = nxt
                for t in range(j):
                    cur[t] = t
                break
            j += 1
        else:
            return


def colex_rank(subset: Sequence[int]) -> int:
    return sum(comb(v, i + 1) for i, v in enumerate(subset))


def colex_unrank(universe: int, k: int, rank: int) -> tuple[int, ...]:
    out = [0] * k
    for i in range(k - 1, -1, -1):
        v = universe - 1
        while v >= i and comb(v, i + 1) > rank:
            v -= 1
        out[i] = v
        rank -= comb(v, i + 1)
        universe = v
    return tuple(out)


def _iter_colex_from(universe: int, k: int, start_rank: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        if start_rank == 0:
            yield ()
        return
    cur = list(colex_unrank(universe, k, start_rank))
    while True:
        yield tuple(cur)
        j = 0
        while j < k:
            nxt = cur[j] + 1
            upper = cur[j + 1] if j + 1 < k else universe
            if nxt < upper:
                cur[j] = nxt
                for t in range(j):
                    cur[t] = t
                break
            j += 1
        else:
            return


def _iter_by_column_weight(weights: Sequence[int], k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(len(weights)) in ascending total weight.

    Heap-based frontier expansion over positions in the weight-sorted
    order; ties resolve by the position tuple, so the order is
    deterministic.
    """
    count = len(weights)
    if k > count:
        return
    order = sorted(range(count), key=lambda i: (weights[i], i))
    w = [weights[i] for i in order]
    start = tuple(range(k))
    heap: list[tuple[int, tuple[int, ...]]] = [(sum(w[:k]), start)]
    seen = {start}
    while heap:
        total, pos = heapq.heappop(heap)
        yield tuple(sorted(order[p] for p in pos))
        for idx in range(k):
            p = pos[idx] + 1
            if p < count and (idx == k - 1 or p < pos[idx + 1]):
                cand = pos[:idx] + (p,) + pos[idx + 1 :]
                if cand not in seen:
                    seen.add(cand)
                    heapq.heappush(heap, (total - w[pos[idx]] + w[p], cand))


# ---------------------------------------------------------------------------
# Permanent evaluation helpers


class _IntPermCache:
    """Per-row-set cache of integer permanents of column selections."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = [tuple(r) for r in rows]
        self.safe = (
            _fastperm.HAVE_NUMBA
            and int_permanent_bound(self.rows) <= _fastperm.INT64_SAFE_BOUND
        )
        self.mat = np.array(self.rows, dtype=np.int64) if self.safe else None
        self.cache: dict[tuple[int, ...], int] = {}

    def prefill_all(self, allowed: Sequence[int], size: int) -> bool:
        """Tabulate every size-``size`` selection from ``allowed``; returns
        False when ineligible (no fast path or too many selections)."""
        if not self.safe or comb(len(allowed), size) > TABLE_CAP:
            return False
        subsets = np.array(
            [[allowed[p] for p in pos] for pos in iter_colex(len(allowed), size)],
            dtype=np.int32,
        ).reshape(-1, size)
        values = _fastperm.perm_int_i64_batch(self.mat, subsets)
        self.cache = {
            tuple(int(c) for c in row): int(v) for row, v in zip(subsets, values)
        }
        return True

    def perm(self, cols: tuple[int, ...]) -> int:
        v = self.cache.get(cols)
        if v is None:
            if self.safe:
                v = _fastperm.perm_int_i64(self.mat[:, list(cols)])
            else:
                v = _perm_int_rows([[row[c] for c in cols] for row in self.rows])
            if len(self.cache) >= TABLE_CAP:
                self.cache.clear()
            self.cache[cols] = v
        return v


class _RingPermCache:
    """Per-row-set cache of ring permanents (coefficient masks)."""

    def __init__(self, bit_rows: Sequence[Sequence[int]], n: int):
        self.rows = [list(r) for r in bit_rows]
        self.n = n
        self.cache: dict[tuple[int, ...], int] = {}

    def perm(self, cols: tuple[int, ...]) -> int:
        v = self.cache.get(cols)
        if v is None:
            v = _perm_ring_bits([[row[c] for c in cols] for row in self.rows], self.n)
            if len(self.cache) >= TABLE_CAP:
                self.cache.clear()
            self.cache[cols] = v
        return v


# ---------------------------------------------------------------------------
# Candidate evaluation (shared by sequential and parallel paths)


def _eval_weight_subset(cache: _IntPermCache, s: tuple[int, ...], p_set: frozenset):
    total = 0
    terms = []
    for i in s:
        if i in p_set:
            continue
        v = cache.perm(tuple(c for c in s if c != i))
        total += v
        terms.append((i, v))
    return total, tuple(terms)


def _eval_poly_subset(cache: _RingPermCache, s: tuple[int, ...], p_set: frozenset):
    total = 0
    terms = []
    for i in s:
        if i in p_set:
            continue
        v = cache.perm(tuple(c for c in s if c != i)).bit_count()
        total += v
        terms.append((i, v))
    return total, tuple(terms)


def _poly_removal_admissible(
    cache_rows: Sequence[Sequence[int]],
    full_rows: Sequence[Sequence[int]],
    removed: tuple[int, ...],
    s: tuple[int, ...],
    n: int,
) -> bool:
    for t in removed:
        stacked = [[full_rows[t][c] for c in s]]
        stacked.extend([row[c] for c in s] for row in cache_rows)
        if _perm_ring_bits(stacked, n) != 0:
            return False
    return True


# Parallel chunk workers (top level for pickling).


def _weight_chunk_worker(payload):
    rows, allowed, k, p_list, lo, hi = payload
    cache = _IntPermCache(rows)
    p_set = frozenset(p_list)
    best = None
    for rank, pos in zip(range(lo, hi), _iter_colex_from(len(allowed), k, lo)):
        s = tuple(allowed[p] for p in pos)
        total, terms = _eval_weight_subset(cache, s, p_set)
        if total > 0 and (best is None or total < best[0]):
            best = (total, rank, s, terms)
    return best, hi - lo


def _poly_chunk_worker(payload):
    bit_rows, n, k, p_list, lo, hi = payload
    cache = _RingPermCache(bit_rows, n)
    p_set = frozenset(p_list)
    universe = len(bit_rows[0])
    best = None
    for rank, s in zip(range(lo, hi), _iter_colex_from(universe, k, lo)):
        total, terms = _eval_poly_subset(cache, s, p_set)
        if total > 0 and (best is None or total < best[0]):
            best = (total, rank, s, terms)
    return best, hi - lo


def _parallel_scan(worker, static_payload, total: int, workers: int):
    """Chunk the colex rank space, evaluate in processes, merge by
    (value, rank).  Returns (best or None, examined)."""
    chunk_count = min(max(workers * 4, 1), max(total // 4096, 1))
    bounds_ = [total * i // chunk_count for i in range(chunk_count + 1)]
    payloads = [
        static_payload + (bounds_[i], bounds_[i + 1]) for i in range(chunk_count)
    ]
    best = None
    examined = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk_best, count in pool.map(worker, payloads):
            examined += count
            if chunk_best is not None and (
                best is None or (chunk_best[0], chunk_best[1]) < (best[0], best[1])
            ):
                best = chunk_best
    return best, examined


# ---------------------------------------------------------------------------
# Engines


class _Search:
    """Tracks the running minimum and enumeration bookkeeping."""

    def __init__(self, budget: int | None):
        self.best_value: int | float = inf
        self.best_S: tuple[int, ...] | None = None
        self.best_T: tuple[int, ...] = ()
        self.best_terms: tuple[tuple[int, int], ...] = ()
        self.examined = 0
        self.budget = budget
        self.truncated = False

    def budget_left(self) -> bool:
        return self.budget is None or self.examined < self.budget

    def offer(self, value, s, t, terms) -> None:
        if 0 < value < self.best_value:
            self.best_value = value
            self.best_S = s
            self.best_T = t
            self.best_terms = terms


def _validate_common(J: int, L: int, puncture, max_removed: int):
    if J + 1 > L:
        raise PreconditionError(
            f"no column sets: need J+1 <= L, got J={J}, L={L}"
        )
    p = index_set(puncture, L, "puncture column")
    if len(p) >= L:
        raise PreconditionError("puncture set must be a proper subset of the columns")
    upper = max(J - 1, 0)
    if not 0 <= max_removed <= upper:
        raise PreconditionError(
            f"max removed rows must lie in [0, {upper}], got {max_removed}"
        )
    return p


def _bound_weight_engine(
    a: WeightMatrix,
    puncture: Sequence[int],
    max_removed: int,
    budget: int | None,
    workers: int,
    theorem: str,
) -> BoundReport:
    J, L = a.J, a.L
    p = _validate_common(J, L, puncture, max_removed)
    p_set = frozenset(p)
    ordering = ORDER_COLEX if budget is None else ORDER_HEURISTIC
    search = _Search(budget)

    for t_size in range(max_removed + 1):
        if not search.budget_left():
            search.truncated = True
            break
        for removed in itertools.combinations(range(J), t_size):
            if not search.budget_left():
                search.truncated = True
                break
            if t_size:
                allowed = [
                    i for i in range(L) if all(a[t, i] == 0 for t in removed)
                ]
            else:
                allowed = list(range(L))
            k = J + 1 - t_size
            if len(allowed) < k:
                continue
            rows = [a.row(j) for j in range(J) if j not in removed]
            cache = _IntPermCache(rows)
            total_subsets = comb(len(allowed), k)

            if budget is None:
                tabulated = cache.prefill_all(allowed, k - 1)
                if (
                    not tabulated
                    and workers > 1
                    and total_subsets >= PARALLEL_MIN_SUBSETS
                ):
                    best, count = _parallel_scan(
                        _weight_chunk_worker,
                        (rows, tuple(allowed), k, tuple(p)),
                        total_subsets,
                        workers,
                    )
                    search.examined += count
                    if best is not None:
                        search.offer(best[0], best[2], removed, best[3])
                    continue
                stream = iter_colex(len(allowed), k)
            else:
                col_weights = [sum(row[i] for row in rows) for i in allowed]
                stream = _iter_by_column_weight(col_weights, k)

            for pos in stream:
                if not search.budget_left():
                    search.truncated = True
                    break
                s = tuple(allowed[q] for q in pos)
                search.examined += 1
                total, terms = _eval_weight_subset(cache, s, p_set)
                search.offer(total, s, removed, terms)

    return BoundReport(
        bound=search.best_value,
        theorem=theorem,
        witness_S=search.best_S,
        witness_T=search.best_T,
        witness_weight_terms=search.best_terms,
        subsets_examined=search.examined,
        exhaustive=not search.truncated,
        ordering=ordering,
    )


def _bound_poly_engine(
    h: PolyMatrix,
    puncture: Sequence[int],
    max_removed: int,
    budget: int | None,
    workers: int,
    theorem: str,
) -> BoundReport:
    J, L = h.J, h.L
    p = _validate_common(J, L, puncture, max_removed)
    p_set = frozenset(p)
    ordering = ORDER_COLEX if budget is None else ORDER_HEURISTIC
    full_rows = h.bit_rows()
    search = _Search(budget)

    for t_size in range(max_removed + 1):
        if not search.budget_left():
            search.truncated = True
            break
        for removed in itertools.combinations(range(J), t_size):
            if not search.budget_left():
                search.truncated = True
                break
            k = J + 1 - t_size
            if k > L:
                continue
            rows = [r for j, r in enumerate(full_rows) if j not in removed]
            cache = _RingPermCache(rows, h.n)
            total_subsets = comb(L, k)

            if (
                budget is None
                and t_size == 0
                and workers > 1
                and total_subsets >= PARALLEL_MIN_SUBSETS
            ):
                best, count = _parallel_scan(
                    _poly_chunk_worker,
                    (tuple(tuple(r) for r in rows), h.n, k, tuple(p)),
                    total_subsets,
                    workers,
                )
                search.examined += count
                if best is not None:
                    search.offer(best[0], best[2], removed, best[3])
                continue

            if budget is None:
                stream: Iterator[tuple[int, ...]] = iter_colex(L, k)
            else:
                col_weights = [
                    sum(bits.bit_count() for bits in (row[i] for row in rows))
                    for i in range(L)
                ]
                stream = _iter_by_column_weight(col_weights, k)

            for s in stream:
                if not search.budget_left():
                    search.truncated = True
                    break
                search.examined += 1
                if t_size and not _poly_removal_admissible(
                    cache.rows, full_rows, removed, s, h.n
                ):
                    continue
                total, terms = _eval_poly_subset(cache, s, p_set)
                search.offer(total, s, removed, terms)

    return BoundReport(
        bound=search.best_value,
        theorem=theorem,
        witness_S=search.best_S,
        witness_T=search.best_T,
        witness_weight_terms=search.best_terms,
        subsets_examined=search.examined,
        exhaustive=not search.truncated,
        ordering=ordering,
    )


# ---------------------------------------------------------------------------
# Public bounds


def bound_weight(
    a: WeightMatrix,
    puncture: Sequence[int] = (),
    budget: int | None = None,
    workers: int = 1,
) -> BoundReport:
    """Upper bound from integer permanents of the weight matrix.

    Requires puncturing to preserve code dimensionality; independent of
    the expansion factor N.
    """
    return _bound_weight_engine(a, puncture, 0, budget, workers, "weight")


def bound_weight_rowremoval(
    a: WeightMatrix,
    puncture: Sequence[int] = (),
    max_removed: int | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> BoundReport:
    """Weight-matrix bound allowing removal of rows whose restriction to
    the chosen columns is all zero; includes the no-removal case."""
    if max_removed is None:
        max_removed = a.J - 1
    return _bound_weight_engine(
        a, puncture, max_removed, budget, workers, "weight-rowremoval"
    )


def bound_poly(
    h: PolyMatrix,
    puncture: Sequence[int] = (),
    budget: int | None = None,
    workers: int = 1,
) -> BoundReport:
    """Upper bound from ring permanents of the polynomial matrix."""
    return _bound_poly_engine(h, puncture, 0, budget, workers, "poly")


def bound_poly_rowremoval(
    h: PolyMatrix,
    puncture: Sequence[int] = (),
    max_removed: int | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> BoundReport:
    """Polynomial bound allowing removal of row sets that pass the
    stacking test; includes the no-removal case."""
    if max_removed is None:
        max_removed = h.J - 1
    return _bound_poly_engine(
        h, puncture, max_removed, budget, workers, "poly-rowremoval"
    )


def bound_best(
    matrix: WeightMatrix | PolyMatrix,
    puncture: Sequence[int] = (),
    max_removed: int | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> BoundReport:
    """Tightest bound across every variant applicable to the input.

    Weight matrices run the weight variants; polynomial matrices run the
    polynomial variants plus the weight variants of their weight image.
    Row removal subsumes the plain bounds, so each family is scanned
    once; a winner with an empty T is attributed to the plain variant.
    Ties prefer weight over poly and plain over row removal.  The budget
    applies to each family separately, and ``exhaustive`` is true only
    when every family was scanned completely.
    """
    if isinstance(matrix, PolyMatrix):
        weight_input = matrix.weight_matrix()
        poly_input = matrix
    else:
        weight_input = matrix
        poly_input = None
    if max_removed is None:
        max_removed = weight_input.J - 1

    reports = []
    if max_removed > 0:
        reports.append(
            bound_weight_rowremoval(weight_input, puncture, max_removed, budget, workers)
        )
        if poly_input is not None:
            reports.append(
                bound_poly_rowremoval(poly_input, puncture, max_removed, budget, workers)
            )
    else:
        reports.append(bound_weight(weight_input, puncture, budget, workers))
        if poly_input is not None:
            reports.append(bound_poly(poly_input, puncture, budget, workers))

    def relabeled(r: BoundReport) -> BoundReport:
        if r.theorem.endswith("-rowremoval") and r.witness_T == () and r.bound != inf:
            return BoundReport(
                r.bound,
                r.theorem.removesuffix("-rowremoval"),
                r.witness_S,
                r.witness_T,
                r.witness_weight_terms,
                r.subsets_examined,
                r.exhaustive,
                r.ordering,
            )
        return r

    reports = [relabeled(r) for r in reports]
    winner = min(
        reports, key=lambda r: (r.bound, THEOREM_ORDER.index(r.theorem))
    )
    return BoundReport(
        bound=winner.bound,
        theorem=winner.theorem,
        witness_S=winner.witness_S,
        witness_T=winner.witness_T,
        witness_weight_terms=winner.witness_weight_terms,
        subsets_examined=sum(r.subsets_examined for r in reports),
        exhaustive=all(r.exhaustive for r in reports),
        ordering=winner.ordering,
    )


# ---------------------------------------------------------------------------
# Cost estimation


@dataclass(frozen=True, slots=True)
class CostEstimate:
    """Predicted enumeration cost: permanents = (J+1) * C(L, J+1), each
    costing roughly ``seconds_per_permanent``."""

    subsets: int
    permanents: int
    seconds_per_permanent: float
    total_seconds: float


def estimate_cost(
    matrix: WeightMatrix | PolyMatrix, puncture: Sequence[int] = ()
) -> CostEstimate:
    """Measure a few representative permanents and extrapolate."""
    if isinstance(matrix, PolyMatrix):
        J, L = matrix.J, matrix.L
        cache: _RingPermCache | _IntPermCache = _RingPermCache(
            matrix.bit_rows(), matrix.n
        )
    else:
        J, L = matrix.J, matrix.L
        cache = _IntPermCache([matrix.row(j) for j in range(J)])
    if J + 1 > L:
        raise PreconditionError(f"need J+1 <= L, got J={J}, L={L}")
    samples = []
    for shift in range(min(3, L - J + 1)):
        cols = tuple(range(shift, shift + J))
        start = time.perf_counter()
        cache.cache.clear()
        cache.perm(cols)
        samples.append(time.perf_counter() - start)
    per = max(sum(samples) / len(samples), 1e-7)
    subsets = comb(L, J + 1)
    permanents = subsets * (J + 1)
    return CostEstimate(subsets, permanents, per, per * permanents)
