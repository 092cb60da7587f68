"""Exhaustive level enumeration of hypergraphs with deterministic chunking.

A *level* is the set of hypergraphs on a fixed (n, r) with a fixed edge
count m, optionally restricted to supergraphs of a base graph or filtered
down to one canonical representative per isomorphism class.  Levels are
walked in colex order of the chosen edge-index sets, which coincides with
ascending numeric order of the chosen-index bitmasks; successive masks
come from Gosper's hack and rank/unrank uses the combinatorial number
system.  That gives stateless chunks ``[lo, hi)`` that partition a level
exactly, so work can be distributed over processes and the results merged
back in rank order: aggregates are reproducible for any worker count, and
interrupted sweeps can resume from a rank.

The monotone reduction plan encodes why sweeping two levels suffices to
verify an edge-count Hamiltonicity threshold for *all* larger edge
counts: a Berge cycle only uses listed edges, so Hamiltonicity survives
edge addition, and a non-Hamiltonian graph above the threshold level
would have all its one-edge-smaller subgraphs non-Hamiltonian as well,
forcing it to be a supergraph of an exceptional graph found at the
threshold level.  Sweeping the supergraphs of each exception closes the
induction; the path statement needs only its own threshold level because
a cycle certificate yields a path certificate by dropping an edge.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from functools import partial
from math import comb
from typing import Callable, Iterator

from .canonical import is_canonical
from .hypergraph import Hypergraph, labeled_pendant_copies, universe_masks

ALL_LABELED = "all_labeled"
CANONICAL_ONLY = "canonical_only"
SUPERGRAPHS = "supergraphs"

DEFAULT_BUDGET = 10 ** 10
DEFAULT_CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    """A level is larger than the configured enumeration budget."""

    def __init__(self, size: int, budget: int, spec: "LevelSpec"):
        super().__init__(
            f"level {spec.n=} {spec.r=} {spec.m=} mode={spec.mode} has exactly "
            f"{size} graphs, exceeding the budget of {budget}"
        )
        self.size = size
        self.budget = budget


@dataclass(frozen=True)
class LevelSpec:
    """One enumeration level: m-edge r-graphs on n vertices."""

    n: int
    r: int
    m: int
    mode: str = ALL_LABELED
    base: Hypergraph | None = None

    def __post_init__(self):
        if not 2 <= self.r <= self.n:
            raise ValueError(f"need 2 <= r <= n, got r={self.r}, n={self.n}")
        if not 0 <= self.m <= comb(self.n, self.r):
            raise ValueError(f"need 0 <= m <= C(n,r), got m={self.m}")
        if self.mode not in (ALL_LABELED, CANONICAL_ONLY, SUPERGRAPHS):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == SUPERGRAPHS:
            if self.base is None:
                raise ValueError("supergraphs mode needs a base hypergraph")
            if (self.base.n, self.base.r) != (self.n, self.r):
                raise ValueError("base must live on the same (n, r)")
            if self.base.m > self.m:
                raise ValueError("base has more edges than the level")
        elif self.base is not None:
            raise ValueError(f"mode {self.mode} takes no base")


def level_size(spec: LevelSpec) -> int:
    """Exact number of edge-index combinations the level enumerates.

    ``canonical_only`` scans the same combinations as ``all_labeled`` and
    filters, so its size is the scan size, not the representative count.
    """
    u = comb(spec.n, spec.r)
    if spec.mode == SUPERGRAPHS:
        return comb(u - spec.base.m, spec.m - spec.base.m)
    return comb(u, spec.m)


def colex_rank(mask: int) -> int:
    """Position of a chosen-index bitmask in colex order of its popcount class."""
    rank = 0
    i = 0
    while mask:
        b = mask & -mask
        mask ^= b
        i += 1
        rank += comb(b.bit_length() - 1, i)
    return rank


def colex_unrank(rank: int, m: int) -> int:
    """Inverse of ``colex_rank`` within the m-subsets."""
    mask = 0
    for i in range(m, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


def next_same_popcount(v: int) -> int:
    """Gosper's hack: numerically next integer with the same popcount."""
    c = v & -v
    r = v + c
    return (((v ^ r) >> 2) // c) | r


def _free_positions(spec: LevelSpec) -> list[int]:
    u = universe_masks(spec.n, spec.r)
    base_set = set(spec.base.edges)
    return [i for i, em in enumerate(u) if em not in base_set]


def iter_level_masks(spec: LevelSpec, lo: int = 0, hi: int | None = None) -> Iterator[tuple[int, int]]:
    """Yield (rank, chosen-universe-mask) over ranks [lo, hi) of the level.

    ``canonical_only`` filtering is *not* applied here; it belongs to the
    visit step so that ranks stay aligned with the plain combination
    order.
    """
    total = level_size(spec)
    if hi is None:
        hi = total
    if not 0 <= lo <= hi <= total:
        raise ValueError(f"bad rank window [{lo}, {hi}) for level of size {total}")
    if lo == hi:
        return
    if spec.mode == SUPERGRAPHS:
        free = _free_positions(spec)
        base_mask = 0
        u = universe_masks(spec.n, spec.r)
        uindex = {em: i for i, em in enumerate(u)}
        for em in spec.base.edges:
            base_mask |= 1 << uindex[em]
        k = spec.m - spec.base.m
        if k == 0:
            yield 0, base_mask
            return
        small = colex_unrank(lo, k)
        for rank in range(lo, hi):
            chosen = base_mask
            s = small
            while s:
                b = s & -s
                s ^= b
                chosen |= 1 << free[b.bit_length() - 1]
            yield rank, chosen
            if rank + 1 < hi:
                small = next_same_popcount(small)
        return
    if spec.m == 0:
        yield 0, 0
        return
    mask = colex_unrank(lo, spec.m)
    for rank in range(lo, hi):
        yield rank, mask
        if rank + 1 < hi:
            mask = next_same_popcount(mask)


def hypergraph_at(spec: LevelSpec, chosen: int) -> Hypergraph:
    """Materialize the hypergraph a chosen-universe mask denotes."""
    u = universe_masks(spec.n, spec.r)
    masks = []
    while chosen:
        b = chosen & -chosen
        chosen ^= b
        masks.append(u[b.bit_length() - 1])
    return Hypergraph._from_sorted_masks(spec.n, spec.r, tuple(masks))


@dataclass
class EnumerationResult:
    scanned: int   # combinations enumerated
    visited: int   # hypergraphs passed to the visitor (after canonical filter)
    hits: list     # (rank, visitor result) for non-None results, rank order


def _visitor_chunk(spec: LevelSpec, lo: int, hi: int, visitor: Callable) -> tuple[int, int, list]:
    scanned = 0
    visited = 0
    hits = []
    canonical_filter = spec.mode == CANONICAL_ONLY
    for rank, chosen in iter_level_masks(spec, lo, hi):
        scanned += 1
        h = hypergraph_at(spec, chosen)
        if canonical_filter and not is_canonical(h):
            continue
        visited += 1
        res = visitor(h)
        if res is not None:
            hits.append((rank, res))
    return scanned, visited, hits


def run_chunks(
    spec: LevelSpec,
    chunk_fn: Callable[[LevelSpec, int, int], object],
    *,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    budget: int | None = DEFAULT_BUDGET,
    progress: Callable[[LevelSpec, int, int, object], None] | None = None,
) -> list:
    """Apply ``chunk_fn(spec, lo, hi)`` over a level, merging in rank order.

    ``chunk_fn`` must be picklable and pure; with ``jobs > 1`` chunks run
    in a process pool, but the returned list is always ordered by rank, so
    any aggregation over it is independent of the worker count.  The
    ``progress`` callback fires per chunk, in rank order.
    """
    total = level_size(spec)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget, spec)
    windows = [(lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)]
    if not windows:
        windows = [(0, 0)]
    results = []
    if jobs <= 1 or len(windows) == 1:
        for lo, hi in windows:
            res = chunk_fn(spec, lo, hi)
            if progress is not None:
                progress(spec, lo, hi, res)
            results.append(res)
        return results
    with multiprocessing.get_context("fork").Pool(processes=jobs) as pool:
        for (lo, hi), res in zip(
            windows, pool.imap(_ChunkTask(chunk_fn, spec), windows, chunksize=1)
        ):
            if progress is not None:
                progress(spec, lo, hi, res)
            results.append(res)
    return results


class _ChunkTask:
    """Picklable adapter binding (chunk_fn, spec) for pool.imap."""

    def __init__(self, chunk_fn, spec):
        self.chunk_fn = chunk_fn
        self.spec = spec

    def __call__(self, window):
        lo, hi = window
        return self.chunk_fn(self.spec, lo, hi)


def enumerate_level(
    spec: LevelSpec,
    visitor: Callable[[Hypergraph], object],
    *,
    jobs: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    budget: int | None = DEFAULT_BUDGET,
    progress=None,
) -> EnumerationResult:
    """Visit every hypergraph of a level exactly once (one representative
    per isomorphism class in ``canonical_only`` mode).

    The visitor must be a pure picklable function; non-None results are
    collected as (rank, result) pairs.  The aggregate is deterministic
    for any ``jobs`` value.
    """
    chunks = run_chunks(
        spec,
        partial(_visitor_chunk, visitor=visitor),
        jobs=jobs,
        chunk_size=chunk_size,
        budget=budget,
        progress=progress,
    )
    out = EnumerationResult(0, 0, [])
    for scanned, visited, hits in chunks:
        out.scanned += scanned
        out.visited += visited
        out.hits.extend(hits)
    return out


@dataclass(frozen=True)
class ReductionPlan:
    """Levels whose exhaustive check settles a threshold theorem for all m.

    ``cycle_level`` holds every graph with one edge more than the cycle
    threshold; ``cycle_supergraph_levels`` add one more edge on top of
    each predicted exceptional graph (campaigns re-derive these from the
    exceptions actually found, so the prediction never biases the check);
    ``path_level`` sits exactly at the path threshold.  See the module
    docstring for the downward-closure argument that makes this complete.
    """

    n: int
    r: int
    cycle_level: LevelSpec
    cycle_supergraph_levels: tuple[LevelSpec, ...]
    path_level: LevelSpec


def monotone_reduction_plan(n: int, r: int) -> ReductionPlan:
    if r < 3 or n < r + 2:
        raise ValueError(f"threshold theorems need n >= r+2 and r >= 3, got (n={n}, r={r})")
    t = comb(n - 1, r)
    supers = tuple(
        LevelSpec(n, r, t + 2, SUPERGRAPHS, base=g) for g in labeled_pendant_copies(n, r)
    ) if t + 2 <= comb(n, r) else ()
    return ReductionPlan(
        n=n,
        r=r,
        cycle_level=LevelSpec(n, r, t + 1),
        cycle_supergraph_levels=supers,
        path_level=LevelSpec(n, r, t),
    )
