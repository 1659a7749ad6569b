"""Random and structured grid-instance generators.

Everything is driven by explicit seeds (or caller-supplied generators); the
same seed always yields the same instance.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .grid import Cell, GridDims, GridInstance


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def uniform_marking(n: int, m: int, p: float, seed) -> GridInstance:
    """Mark each cell independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"marking probability must be in [0, 1], got {p}")
    rng = _as_rng(seed)
    mask = rng.random((n, m)) < p
    cells = frozenset((int(r) + 1, int(c) + 1) for r, c in zip(*np.nonzero(mask)))
    return GridInstance(GridDims(n, m), cells)


def random_connected_cells(n: int, m: int, k: int, seed) -> frozenset[Cell]:
    """Grow an 8-connected set of ``k`` cells by random adjacent accretion."""
    if k < 1:
        raise ValueError("need at least one cell")
    rng = _as_rng(seed)
    start = (int(rng.integers(1, n + 1)), int(rng.integers(1, m + 1)))
    cells = {start}
    order = [start]
    offsets = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    while len(cells) < k:
        base = order[int(rng.integers(0, len(order)))]
        dr, dc = offsets[int(rng.integers(0, 8))]
        cand = (base[0] + dr, base[1] + dc)
        if 1 <= cand[0] <= n and 1 <= cand[1] <= m and cand not in cells:
            cells.add(cand)
            order.append(cand)
    return frozenset(cells)


def diagonal_chain(k: int) -> GridInstance:
    """k cells along the main diagonal; its bounding rectangle has perimeter 4k."""
    return GridInstance.of(k, k, [(i, i) for i in range(1, k + 1)])


def _ring(r0: int, c0: int, half: int) -> set[Cell]:
    cells: set[Cell] = set()
    for d in range(-half, half + 1):
        cells.update({
            (r0 - half, c0 + d), (r0 + half, c0 + d),
            (r0 + d, c0 - half), (r0 + d, c0 + half),
        })
    return cells


def nested_rings(n: int, m: int, gap: int = 2) -> GridInstance | None:
    """Concentric square rings around the grid centre, plus the centre cell."""
    r0, c0 = (n + 1) // 2, (m + 1) // 2
    max_half = min(r0 - 2, c0 - 2, n - r0 - 1, m - c0 - 1)
    if max_half < 1:
        return None
    cells: set[Cell] = {(r0, c0)}
    half = max_half
    while half >= 1:
        cells.update(_ring(r0, c0, half))
        half -= gap
    return GridInstance(GridDims(n, m), frozenset(cells))


def comb(n: int, m: int, spine_row: int, tooth_step: int = 2) -> GridInstance | None:
    """A horizontal spine with teeth reaching down from it."""
    if not 2 <= spine_row <= n - 1 or m < 4:
        return None
    cells: set[Cell] = {(spine_row, c) for c in range(2, m)}
    for c in range(2, m, tooth_step):
        for r in range(spine_row + 1, n):
            cells.add((r, c))
    return GridInstance(GridDims(n, m), frozenset(cells))


def blocked_corridors(n: int, m: int, band: int = 2) -> GridInstance | None:
    """Dense bands separated by single free rows, pressed against one side."""
    if n < band + 3 or m < 4:
        return None
    cells: set[Cell] = set()
    r = 2
    while r + band - 1 <= n - 1:
        for rr in range(r, r + band):
            for c in range(2, m):
                cells.add((rr, c))
        r += band + 1
    if not cells:
        return None
    return GridInstance(GridDims(n, m), frozenset(cells))


def junction_cluster(n: int, m: int, stem: int = 3, pitch: int = 5) -> GridInstance | None:
    """T-junction motifs tiled along the top edge.

    Each motif is a vertical stem, a left arm and a foot cell.  The shared
    corridor cell left of the junction is consumed by the stem's
    shortest-path tie-break, which strands the arm's deepest cell; the
    optimum detours the stem rightwards instead.  One motif costs greedy
    one path, so the gap grows with the number of tiles.
    """
    if n < stem + 1 or m < 4:
        return None
    cells: set[Cell] = set()
    c0 = 3
    while c0 + 1 <= m:
        for r in range(1, stem + 1):
            cells.add((r, c0))
        cells.add((stem, c0 - 2))
        cells.add((stem, c0 - 1))
        cells.add((stem + 1, c0 - 1))
        c0 += pitch
    return GridInstance.of(n, m, cells)


def dense_blob(n: int, m: int, seed, fill: float = 0.85) -> GridInstance:
    """A dense random blob in the grid interior plus sparse satellites."""
    rng = _as_rng(seed)
    cells: set[Cell] = set()
    r0 = int(rng.integers(2, max(3, n // 2)))
    c0 = int(rng.integers(2, max(3, m // 2)))
    h = int(rng.integers(2, max(3, n - r0)))
    w = int(rng.integers(2, max(3, m - c0)))
    for r in range(r0, min(n, r0 + h) + 1):
        for c in range(c0, min(m, c0 + w) + 1):
            if rng.random() < fill:
                cells.add((r, c))
    for _ in range(max(2, n * m // 20)):
        cells.add((int(rng.integers(1, n + 1)), int(rng.integers(1, m + 1))))
    return GridInstance(GridDims(n, m), frozenset(cells))


def adversary_candidates(dims: GridDims) -> Iterator[GridInstance]:
    """Deterministic library of instances that tend to defeat greedy routing."""
    n, m = dims.n, dims.m
    for gap in (2, 3):
        inst = nested_rings(n, m, gap)
        if inst is not None:
            yield inst
    for spine in range(2, min(n, 5)):
        for step in (2, 3):
            inst = comb(n, m, spine, step)
            if inst is not None:
                yield inst
    for band in (1, 2, 3):
        inst = blocked_corridors(n, m, band)
        if inst is not None:
            yield inst
    for stem in (3, 4):
        for pitch in (5, 7):
            inst = junction_cluster(n, m, stem, pitch)
            if inst is not None:
                yield inst
