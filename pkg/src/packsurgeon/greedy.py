"""Greedy shortest-first disjoint path routing and its comparison against
the exact flow optimum.

The greedy router repeats a multi-source BFS from all marked cells that do
not yet start a path, over cells not consumed by earlier paths, and accepts
one shortest marked-to-boundary path per round.  It never beats the flow
value f, and on some instances it finds strictly fewer paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import generate
from .flow import path_cover
from .grid import Cell, GridDims, GridInstance

# BFS neighbour order and backward-reconstruction order: up, left, right,
# down, which is exactly lexicographic order of the neighbour coordinates.
_DIRS = ((-1, 0), (0, -1), (0, 1), (1, 0))


@dataclass(frozen=True)
class GreedyResult:
    f_prime: int
    paths: tuple[tuple[Cell, ...], ...]


@dataclass(frozen=True)
class RandomMarkingModel:
    """Uniform marking probability p on an n x m grid."""

    n: int
    m: int
    p: float


@dataclass(frozen=True)
class RatioStats:
    """Aggregated f'/f ratios over random instances (f > 0 only)."""

    trials: int
    ratios: tuple[Fraction, ...]
    min_ratio: Fraction | None
    mean_ratio: Fraction | None
    pairs: tuple[tuple[int, int], ...]  # (f_prime, f) per counted trial


def greedy_bfs_paths(inst: GridInstance) -> GreedyResult:
    n, m = inst.dims.n, inst.dims.m
    nm = n * m
    marked = sorted((r - 1) * m + (c - 1) for r, c in inst.marked)
    blocked = bytearray(nm)
    routed = bytearray(nm)
    dist = [0] * nm
    seen = [0] * nm
    stamp = 0
    paths: list[tuple[Cell, ...]] = []
    prev_best = 0

    while True:
        stamp += 1
        queue: deque[int] = deque()
        for u in marked:
            if not routed[u] and not blocked[u]:
                seen[u] = stamp
                dist[u] = 0
                queue.append(u)
        while queue:
            u = queue.popleft()
            r, c = divmod(u, m)
            du = dist[u] + 1
            for dr, dc in _DIRS:
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < m:
                    w = nr * m + nc
                    if seen[w] != stamp and not blocked[w]:
                        seen[w] = stamp
                        dist[w] = du
                        queue.append(w)
        best = None
        for r in range(n):
            for c in range(m):
                if r == 0 or r == n - 1 or c == 0 or c == m - 1:
                    u = r * m + c
                    if seen[u] == stamp:
                        cand = (dist[u], r, c)
                        if best is None or cand < best:
                            best = cand
        if best is None:
            break
        d, r, c = best
        # Shortest-first sanity: blocking cells can only lengthen routes.
        if d + 1 < prev_best:
            raise AssertionError("accepted path shorter than an earlier round's")
        prev_best = d + 1
        rev: list[int] = [r * m + c]
        while d > 0:
            r0, c0 = divmod(rev[-1], m)
            for dr, dc in _DIRS:
                nr, nc = r0 + dr, c0 + dc
                if 0 <= nr < n and 0 <= nc < m:
                    w = nr * m + nc
                    if seen[w] == stamp and dist[w] == d - 1 and not blocked[w]:
                        rev.append(w)
                        d -= 1
                        break
            else:
                raise AssertionError("BFS parent chain broken")
        rev.reverse()
        for u in rev:
            blocked[u] = 1
        routed[rev[0]] = 1
        paths.append(tuple((u // m + 1, u % m + 1) for u in rev))

    return GreedyResult(len(paths), tuple(paths))


def compare_f_prime_f(inst: GridInstance, method: str = "dinic") -> tuple[int, int]:
    """(f_prime, f); greedy can never exceed the flow optimum."""
    f_prime = greedy_bfs_paths(inst).f_prime
    f = path_cover(inst, method=method).f
    if f_prime > f:
        raise AssertionError(f"greedy found {f_prime} paths but the optimum is {f}")
    return f_prime, f


def counterexample_search(
    budget: int, dims: GridDims, seed
) -> GridInstance | None:
    """Search for an instance where greedy routing is strictly suboptimal.

    Tries a deterministic library of structured candidates first, then
    random markings at several densities; each attempt consumes one unit
    of ``budget``.
    """
    if budget < 1:
        return None
    trials = 0
    for inst in generate.adversary_candidates(dims):
        if trials >= budget:
            return None
        trials += 1
        f_prime, f = compare_f_prime_f(inst)
        if f_prime < f:
            return inst
    rng = np.random.default_rng(seed)
    densities = (0.3, 0.4, 0.5, 0.6)
    while trials < budget:
        trials += 1
        p = densities[trials % len(densities)]
        inst = generate.uniform_marking(dims.n, dims.m, p, rng)
        f_prime, f = compare_f_prime_f(inst)
        if f_prime < f:
            return inst
    return None


def ratio_experiment(model: RandomMarkingModel, trials: int, seed) -> RatioStats:
    """Sample instances from ``model`` and aggregate f'/f over those with f > 0."""
    if trials < 1:
        raise ValueError("need at least one trial")
    seeds = np.random.SeedSequence(seed).spawn(trials)
    ratios: list[Fraction] = []
    pairs: list[tuple[int, int]] = []
    for child in seeds:
        inst = generate.uniform_marking(
            model.n, model.m, model.p, np.random.default_rng(child)
        )
        f_prime, f = compare_f_prime_f(inst)
        if f > 0:
            ratios.append(Fraction(f_prime, f))
            pairs.append((f_prime, f))
    if ratios:
        min_ratio = min(ratios)
        mean_ratio = sum(ratios, Fraction(0)) / len(ratios)
    else:
        min_ratio = mean_ratio = None
    return RatioStats(
        trials=trials,
        ratios=tuple(ratios),
        min_ratio=min_ratio,
        mean_ratio=mean_ratio,
        pairs=tuple(pairs),
    )
