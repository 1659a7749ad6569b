"""Grid data model: dimensions, cells, rectangles and marked-cell sets.

Cells are 1-based ``(row, col)`` tuples.  A cell is on the boundary when it
has fewer than four neighbours.  Rectangles are inclusive index ranges whose
cellular perimeter counts the grid edges on their outline.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]

# Cap on either side length; the vertex-split flow network for anything
# larger would not fit in memory.
MAX_SIDE = 10_000


@dataclass(frozen=True, order=True)
class GridDims:
    """Number of rows ``n`` and columns ``m`` of a grid."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError(f"grid dims must be >= 1, got {self.n}x{self.m}")
        if self.n > MAX_SIDE or self.m > MAX_SIDE:
            raise ValueError(
                f"grid dims capped at {MAX_SIDE}x{MAX_SIDE}, got {self.n}x{self.m}"
            )

    def contains(self, cell: Cell) -> bool:
        r, c = cell
        return 1 <= r <= self.n and 1 <= c <= self.m

    def is_boundary(self, cell: Cell) -> bool:
        r, c = cell
        return r == 1 or r == self.n or c == 1 or c == self.m

    def cells(self) -> Iterator[Cell]:
        for r in range(1, self.n + 1):
            for c in range(1, self.m + 1):
                yield (r, c)


def neighbors4(cell: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    """4-neighbourhood in up, left, right, down order (may leave the grid)."""
    r, c = cell
    return ((r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c))


def neighbors8(cell: Cell) -> tuple[Cell, ...]:
    r, c = cell
    return (
        (r - 1, c - 1), (r - 1, c), (r - 1, c + 1),
        (r, c - 1), (r, c + 1),
        (r + 1, c - 1), (r + 1, c), (r + 1, c + 1),
    )


@dataclass(frozen=True, order=True)
class GridRect:
    """Axis-aligned cell range ``(i..i_hi) x (j..j_hi)``, 1-based inclusive."""

    i: int
    i_hi: int
    j: int
    j_hi: int

    def __post_init__(self) -> None:
        if not (1 <= self.i <= self.i_hi and 1 <= self.j <= self.j_hi):
            raise ValueError(f"invalid rectangle {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i, self.i_hi, self.j, self.j_hi)

    def contains(self, cell: Cell) -> bool:
        r, c = cell
        return self.i <= r <= self.i_hi and self.j <= c <= self.j_hi

    def cells(self) -> Iterator[Cell]:
        for r in range(self.i, self.i_hi + 1):
            for c in range(self.j, self.j_hi + 1):
                yield (r, c)

    @property
    def rows(self) -> int:
        return self.i_hi - self.i + 1

    @property
    def cols(self) -> int:
        return self.j_hi - self.j + 1


def cellular_perimeter(rect: GridRect) -> int:
    """Grid edges on the rectangle outline: ``2 * (rows + cols)``."""
    return 2 * (rect.rows + rect.cols)


def boundary_cell_count(dims: GridDims) -> int:
    """Number of cells with fewer than four neighbours."""
    return dims.n * dims.m - max(0, dims.n - 2) * max(0, dims.m - 2)


def eight_connected_components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """Partition into maximal 8-connected components, sorted by minimum cell."""
    remaining = set(cells)
    components: list[frozenset[Cell]] = []
    while remaining:
        seed = next(iter(remaining))
        remaining.discard(seed)
        comp = {seed}
        queue = deque([seed])
        while queue:
            cur = queue.popleft()
            for nb in neighbors8(cur):
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    queue.append(nb)
        components.append(frozenset(comp))
    components.sort(key=min)
    return components


def bounding_rectangle(cells: Iterable[Cell]) -> GridRect:
    """Smallest rectangle containing every cell; raises on an empty set."""
    it = iter(cells)
    try:
        r, c = next(it)
    except StopIteration:
        raise ValueError("empty cell set") from None
    i = i_hi = r
    j = j_hi = c
    for r, c in it:
        if r < i:
            i = r
        elif r > i_hi:
            i_hi = r
        if c < j:
            j = c
        elif c > j_hi:
            j_hi = c
    return GridRect(i, i_hi, j, j_hi)


@dataclass(frozen=True)
class GridInstance:
    """A grid together with its marked cells."""

    dims: GridDims
    marked: frozenset[Cell]

    def __post_init__(self) -> None:
        for cell in self.marked:
            if not self.dims.contains(cell):
                raise ValueError(f"marked cell {cell} outside {self.dims}")

    @staticmethod
    def of(n: int, m: int, marked: Iterable[Cell] = ()) -> "GridInstance":
        return GridInstance(GridDims(n, m), frozenset(marked))


def validate_cell_path(inst: GridInstance, path: list[Cell]) -> None:
    """Raise unless ``path`` runs from a marked cell to the boundary.

    Checks: non-empty, all cells in bounds and distinct, consecutive cells
    4-adjacent, first cell marked, last cell on the boundary.
    """
    if not path:
        raise ValueError("empty path")
    if len(set(path)) != len(path):
        raise ValueError("path repeats a cell")
    for cell in path:
        if not inst.dims.contains(cell):
            raise ValueError(f"path cell {cell} outside grid")
    for a, b in zip(path, path[1:]):
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise ValueError(f"path cells {a} and {b} not adjacent")
    if path[0] not in inst.marked:
        raise ValueError(f"path start {path[0]} is not marked")
    if not inst.dims.is_boundary(path[-1]):
        raise ValueError(f"path end {path[-1]} is not on the boundary")
