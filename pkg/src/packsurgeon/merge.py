"""Collapse touching grid rectangles into pairwise-disjoint bounding boxes.

Two rectangles touch when their closed regions share at least a point,
including corner-only contact.  Repeatedly replacing the first touching
pair (in lexicographic order) by its bounding rectangle reaches a fixed
point whose total cellular perimeter never exceeds the input's.
"""

from __future__ import annotations

from typing import Iterable

from .grid import GridDims, GridRect, cellular_perimeter


def rects_touch(a: GridRect, b: GridRect) -> bool:
    """True when the closed cell regions of the rectangles share a point."""
    return (
        a.i <= b.i_hi + 1 and b.i <= a.i_hi + 1
        and a.j <= b.j_hi + 1 and b.j <= a.j_hi + 1
    )


def _bounding(a: GridRect, b: GridRect) -> GridRect:
    return GridRect(
        min(a.i, b.i), max(a.i_hi, b.i_hi),
        min(a.j, b.j), max(a.j_hi, b.j_hi),
    )


def merge_rectangles(
    rects: Iterable[GridRect], dims: GridDims | None = None
) -> list[GridRect]:
    """Merge until no two rectangles touch; returns a sorted list.

    Scans pairs in lexicographic order, merges the first touching pair and
    restarts.  Every output rectangle's formation chain contains at most
    ``n + m`` perimeter-increasing merges (each such merge grows the
    perimeter by at least 2 and the perimeter is capped by ``2 * (n + m)``),
    which is asserted when ``dims`` is supplied.
    """
    work: list[GridRect] = sorted(rects)
    # Number of perimeter-increasing merges in each rectangle's history.
    growth: list[int] = [0] * len(work)

    while True:
        hit = None
        for ai in range(len(work)):
            for bi in range(ai + 1, len(work)):
                if rects_touch(work[ai], work[bi]):
                    hit = (ai, bi)
                    break
            if hit:
                break
        if hit is None:
            return work
        ai, bi = hit
        a, b = work[ai], work[bi]
        merged = _bounding(a, b)
        pa, pb, pm = cellular_perimeter(a), cellular_perimeter(b), cellular_perimeter(merged)
        if pm > pa + pb:
            raise AssertionError("merge step increased total perimeter")
        steps = max(growth[ai], growth[bi]) + (1 if pm > max(pa, pb) else 0)
        if dims is not None and steps > dims.n + dims.m:
            raise AssertionError("merge chain exceeded the n+m iteration bound")
        del work[bi], growth[bi]
        del work[ai], growth[ai]
        # Keep the working list sorted so the scan order stays canonical.
        pos = 0
        while pos < len(work) and work[pos] < merged:
            pos += 1
        work.insert(pos, merged)
        growth.insert(pos, steps)
