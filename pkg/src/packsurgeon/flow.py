"""Maximum sets of cell-disjoint escape paths from marked cells to the grid
boundary, with a matching minimum cut and a cheap rectangle cover.

Unit vertex capacities are modelled by splitting every cell into an A-node
and a B-node joined by a capacity-1 arc; marked cells hang off the source,
boundary cells feed the sink, and adjacent cells are wired B->A.  All arcs
that would be unbounded carry capacity 1 instead, which leaves the maximum
flow value unchanged because no arc can carry more than one unit anyway.

The default solver is a layered-BFS augmenting method (Dinic); a plain
shortest-augmenting-path solver is provided as an alternative backend and
must produce the same flow value on every instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .grid import (
    Cell,
    GridInstance,
    GridRect,
    bounding_rectangle,
    cellular_perimeter,
    eight_connected_components,
)

METHODS = ("dinic", "edmonds-karp")

# Direction order: up, left, right, down (row/col deltas on 0-based cells).
_DIRS = ((-1, 0), (0, -1), (0, 1), (1, 0))
_OPP = (3, 2, 1, 0)


@dataclass(frozen=True)
class PathCover:
    """Escape paths, the dual cut, and bounding rectangles of its components.

    Invariants (enforced by construction, re-checked in the test suite):
    paths are pairwise cell-disjoint and run marked -> boundary, exactly
    ``f`` cut cells disconnect all marked cells from the boundary, every
    marked cell lies in some rectangle, and the total cellular perimeter of
    the rectangles is at most ``4 * f``.
    """

    f: int
    paths: tuple[tuple[Cell, ...], ...]
    cut_cells: frozenset[Cell]
    rectangles: tuple[GridRect, ...]


class _FlowState:
    """Integral max flow on the vertex-split grid network, as flat arrays."""

    def __init__(self, inst: GridInstance, f: int, through, from_source, to_sink, move):
        self.inst = inst
        self.f = f
        self.through = through          # flow on A(u)->B(u), per cell
        self.from_source = from_source  # flow on s->A(u)
        self.to_sink = to_sink          # flow on B(u)->t
        self.move = move                # move[d][u]: flow on B(u)->A(u + dir d)


def _marked_flat(inst: GridInstance) -> np.ndarray:
    m = inst.dims.m
    if not inst.marked:
        return np.empty(0, dtype=np.int64)
    arr = np.array([(r - 1) * m + (c - 1) for r, c in inst.marked], dtype=np.int64)
    arr.sort()
    return arr


def _boundary_flat(inst: GridInstance) -> np.ndarray:
    n, m = inst.dims.n, inst.dims.m
    mask = np.zeros((n, m), dtype=bool)
    mask[0, :] = mask[-1, :] = True
    mask[:, 0] = mask[:, -1] = True
    return np.flatnonzero(mask)


def _neighbor_pairs(n: int, m: int, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat ids (u, v) with v the direction-``d`` neighbour of u."""
    ids = np.arange(n * m, dtype=np.int64).reshape(n, m)
    dr, dc = _DIRS[d]
    rows = slice(max(0, -dr), n - max(0, dr))
    cols = slice(max(0, -dc), m - max(0, dc))
    u = ids[rows, cols]
    v = ids[max(0, dr):n - max(0, -dr), max(0, dc):m - max(0, -dc)]
    return u.ravel(), v.ravel()


def _solve_dinic(inst: GridInstance) -> _FlowState:
    n, m = inst.dims.n, inst.dims.m
    nm = n * m
    s, t = 2 * nm, 2 * nm + 1
    marked = _marked_flat(inst)
    boundary = _boundary_flat(inst)

    blocks: list[tuple[np.ndarray, np.ndarray]] = []
    cells = np.arange(nm, dtype=np.int64)
    blocks.append((cells, cells + nm))  # A(u) -> B(u)
    move_us: list[np.ndarray] = []
    for d in range(4):
        u, v = _neighbor_pairs(n, m, d)
        move_us.append(u)
        blocks.append((u + nm, v))      # B(u) -> A(v)
    blocks.append((boundary + nm, np.full(boundary.size, t, dtype=np.int64)))
    blocks.append((np.full(marked.size, s, dtype=np.int64), marked))

    rows = np.concatenate([b[0] for b in blocks])
    cols = np.concatenate([b[1] for b in blocks])
    n_fwd = rows.size
    # Explicit zero-capacity reverse arcs keep the residual's sparsity equal
    # to the input's, so flows can be read straight out of ``res.flow.data``.
    all_rows = np.concatenate([rows, cols])
    all_cols = np.concatenate([cols, rows])
    caps = np.zeros(2 * n_fwd, dtype=np.int32)
    caps[:n_fwd] = 1

    order = np.lexsort((all_cols, all_rows))
    inv = np.empty_like(order)
    inv[order] = np.arange(order.size)

    nnodes = 2 * nm + 2
    indptr = np.zeros(nnodes + 1, dtype=np.int64)
    np.add.at(indptr, all_rows[order] + 1, 1)
    np.cumsum(indptr, out=indptr)
    graph = csr_matrix(
        (caps[order], all_cols[order].astype(np.int32), indptr),
        shape=(nnodes, nnodes),
    )

    res = maximum_flow(graph, s, t, method="dinic")
    flows = np.asarray(res.flow.data)

    pos = 0
    def take(count: int) -> np.ndarray:
        nonlocal pos
        out = flows[inv[pos:pos + count]]
        pos += count
        return out

    through = take(nm).astype(np.int8)
    move = []
    for d in range(4):
        u = move_us[d]
        dense = np.zeros(nm, dtype=np.int8)
        dense[u] = take(u.size)
        move.append(dense)
    to_sink = np.zeros(nm, dtype=np.int8)
    to_sink[boundary] = take(boundary.size)
    from_source = np.zeros(nm, dtype=np.int8)
    from_source[marked] = take(marked.size)
    return _FlowState(inst, int(res.flow_value), through, from_source, to_sink, move)


def _solve_edmonds_karp(inst: GridInstance) -> _FlowState:
    """Plain shortest-augmenting-path solver on an explicit residual graph."""
    n, m = inst.dims.n, inst.dims.m
    nm = n * m
    s, t = 2 * nm, 2 * nm + 1
    head: list[list[int]] = [[] for _ in range(2 * nm + 2)]
    to: list[int] = []
    cap: list[int] = []

    def add_arc(u: int, v: int) -> int:
        e = len(to)
        head[u].append(e)
        to.append(v)
        cap.append(1)
        head[v].append(e + 1)
        to.append(u)
        cap.append(0)
        return e

    through_e = [add_arc(u, u + nm) for u in range(nm)]
    move_e: list[dict[int, int]] = [dict() for _ in range(4)]
    for d in range(4):
        us, vs = _neighbor_pairs(n, m, d)
        for u, v in zip(us.tolist(), vs.tolist()):
            move_e[d][u] = add_arc(u + nm, v)
    sink_e = {int(u): add_arc(int(u) + nm, t) for u in _boundary_flat(inst)}
    src_e = {int(u): add_arc(s, int(u)) for u in _marked_flat(inst)}

    f = 0
    parent_arc = [-1] * (2 * nm + 2)
    while True:
        for i in range(len(parent_arc)):
            parent_arc[i] = -1
        parent_arc[s] = -2
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for e in head[u]:
                v = to[e]
                if parent_arc[v] == -1 and cap[e] > 0:
                    parent_arc[v] = e
                    queue.append(v)
        if parent_arc[t] == -1:
            break
        v = t
        while v != s:
            e = parent_arc[v]
            cap[e] -= 1
            cap[e ^ 1] += 1
            v = to[e ^ 1]
        f += 1

    through = np.array([1 - cap[e] for e in through_e], dtype=np.int8)
    move = []
    for d in range(4):
        dense = np.zeros(nm, dtype=np.int8)
        for u, e in move_e[d].items():
            dense[u] = 1 - cap[e]
        move.append(dense)
    to_sink = np.zeros(nm, dtype=np.int8)
    for u, e in sink_e.items():
        to_sink[u] = 1 - cap[e]
    from_source = np.zeros(nm, dtype=np.int8)
    for u, e in src_e.items():
        from_source[u] = 1 - cap[e]
    return _FlowState(inst, f, through, from_source, to_sink, move)


def _solve(inst: GridInstance, method: str) -> _FlowState:
    if method not in METHODS:
        raise ValueError(f"unknown flow method {method!r}, expected one of {METHODS}")
    if not inst.marked:
        nm = inst.dims.n * inst.dims.m
        zero = np.zeros(nm, dtype=np.int8)
        return _FlowState(inst, 0, zero, zero.copy(), zero.copy(),
                          [zero.copy() for _ in range(4)])
    if method == "dinic":
        return _solve_dinic(inst)
    return _solve_edmonds_karp(inst)


def _decompose(state: _FlowState) -> list[list[Cell]]:
    """Trace the f unit flows into cell paths, cancelling flow as traced.

    Flow conservation with unit vertex capacities makes the outgoing flow of
    every visited cell unique, so tracing is deterministic and cannot loop.
    """
    n, m = state.inst.dims.n, state.inst.dims.m
    through = state.through.copy()
    to_sink = state.to_sink.copy()
    move = [d.copy() for d in state.move]
    paths: list[list[Cell]] = []
    for u in np.flatnonzero(state.from_source).tolist():
        path: list[Cell] = []
        cur = u
        while True:
            if through[cur] != 1:
                raise AssertionError("flow conservation violated at cell A->B")
            through[cur] = 0
            path.append((cur // m + 1, cur % m + 1))
            if to_sink[cur]:
                to_sink[cur] = 0
                break
            r, c = divmod(cur, m)
            for d, (dr, dc) in enumerate(_DIRS):
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < m and move[d][cur]:
                    move[d][cur] = 0
                    cur = nr * m + nc
                    break
            else:
                raise AssertionError("unit flow ends before reaching the sink")
        paths.append(path)
    return paths


def _source_side_cut(state: _FlowState) -> set[Cell]:
    """Cells whose A-node is residual-reachable from the source but whose
    B-node is not (the canonical minimum cut closest to the source).

    Source, sink and neighbour arcs are conceptually unbounded, so forward
    traversal over them never depends on their flow; only the saturated
    A->B arcs stop the search.
    """
    n, m = state.inst.dims.n, state.inst.dims.m
    through = state.through
    move = state.move
    a_reach = bytearray(n * m)
    b_reach = bytearray(n * m)
    queue: deque[int] = deque()
    for u in np.flatnonzero(_marked_mask(state.inst)).tolist():
        a_reach[u] = 1
        queue.append(u)
    while queue:
        node = queue.popleft()
        if node >= 0:  # A-node of cell `node`
            u = node
            r, c = divmod(u, m)
            if through[u] == 0 and not b_reach[u]:
                b_reach[u] = 1
                queue.append(~u)
            for d, (dr, dc) in enumerate(_DIRS):
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < m:
                    w = nr * m + nc
                    if move[_OPP[d]][w] and not b_reach[w]:
                        b_reach[w] = 1
                        queue.append(~w)
        else:  # B-node of cell `~node`
            u = ~node
            r, c = divmod(u, m)
            if state.inst.dims.is_boundary((r + 1, c + 1)):
                raise AssertionError("sink reachable in residual graph of a max flow")
            if through[u] == 1 and not a_reach[u]:
                a_reach[u] = 1
                queue.append(u)
            for dr, dc in _DIRS:
                nr, nc = r + dr, c + dc
                if 0 <= nr < n and 0 <= nc < m:
                    w = nr * m + nc
                    if not a_reach[w]:
                        a_reach[w] = 1
                        queue.append(w)
    return {
        (u // m + 1, u % m + 1)
        for u in range(n * m)
        if a_reach[u] and not b_reach[u]
    }


def _marked_mask(inst: GridInstance) -> np.ndarray:
    mask = np.zeros(inst.dims.n * inst.dims.m, dtype=bool)
    mask[_marked_flat(inst)] = True
    return mask


def max_disjoint_paths(inst: GridInstance, method: str = "dinic") -> tuple[int, list[list[Cell]]]:
    """Maximum number of cell-disjoint marked-to-boundary paths, with paths."""
    state = _solve(inst, method)
    paths = _decompose(state)
    if len(paths) != state.f:
        raise AssertionError("flow decomposition lost a unit flow")
    return state.f, paths


def min_cut_cells(inst: GridInstance, method: str = "dinic") -> frozenset[Cell]:
    """A set of exactly f cells whose removal pens all marked cells in."""
    state = _solve(inst, method)
    cut = _source_side_cut(state)
    if len(cut) != state.f:
        raise AssertionError("residual cut size disagrees with flow value")
    return frozenset(cut)


def path_cover(inst: GridInstance, method: str = "dinic") -> PathCover:
    """Solve once, then derive paths, cut cells and covering rectangles."""
    state = _solve(inst, method)
    paths = _decompose(state)
    cut = _source_side_cut(state)
    if len(cut) != state.f or len(paths) != state.f:
        raise AssertionError("max-flow/min-cut bookkeeping out of sync")
    rects = tuple(sorted(
        bounding_rectangle(comp) for comp in eight_connected_components(cut)
    ))
    total = sum(cellular_perimeter(r) for r in rects)
    if total > 4 * state.f:
        raise AssertionError("rectangle cover exceeds the 4f perimeter bound")
    return PathCover(
        f=state.f,
        paths=tuple(tuple(p) for p in paths),
        cut_cells=frozenset(cut),
        rectangles=rects,
    )
