"""Planar model of unit-square packings.

A packing is a large axis-aligned square of side ``x`` (the frame, anchored
at the origin) filled with non-overlapping unit squares given by centre and
tilt.  Tilts live in [0, pi/2) because of the square's symmetry; the tilt
distance between two squares is the smallest rotation aligning their edge
directions and never exceeds pi/4.

Wasted area inside arbitrary regions (disks, rectangles, tubes around
polylines, finite unions) is estimated by seeded Monte Carlo sampling;
points outside the frame never count as waste.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

QUARTER_TURN = math.pi / 2

# Overlaps shallower than this are treated as touching contact, which a
# valid packing is allowed to have (shared edges have zero area).
OVERLAP_TOL = 1e-9
CONTAIN_TOL = 1e-9

# Two-sided 99% normal quantile for confidence half-widths.
_Z99 = 2.5758293035489004

_CHUNK = 1 << 17


@dataclass(frozen=True)
class UnitSquare:
    """Unit square at centre ``(cx, cy)`` tilted by ``tilt`` radians."""

    cx: float
    cy: float
    tilt: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "tilt", float(self.tilt) % QUARTER_TURN)

    def corners(self) -> np.ndarray:
        c, s = math.cos(self.tilt), math.sin(self.tilt)
        half = np.array([[c - s, c + s, -c + s, -c - s],
                         [s + c, s - c, -s - c, -s + c]]).T / 2.0
        return half + np.array([self.cx, self.cy])

    def half_extent(self, axis_angle: float) -> float:
        """Half-width of the square projected on a direction."""
        rel = axis_angle - self.tilt
        return (abs(math.cos(rel)) + abs(math.sin(rel))) / 2.0


@dataclass(frozen=True)
class Packing:
    """Frame side length and the posed unit squares inside it."""

    x: float
    squares: tuple[UnitSquare, ...]

    def __post_init__(self) -> None:
        if not self.x > 0:
            raise ValueError(f"frame side must be positive, got {self.x}")
        object.__setattr__(self, "squares", tuple(self.squares))


@dataclass(frozen=True)
class GoodnessConfig:
    """Tilt threshold below which a square counts as aligned ("good")."""

    c: float = 1e-10

    def __post_init__(self) -> None:
        if not 0 < self.c <= math.pi / 4:
            raise ValueError(f"tilt threshold must be in (0, pi/4], got {self.c}")


def theta(a: Union[UnitSquare, float], b: Union[UnitSquare, float]) -> float:
    """Minimum rotation (radians, in [0, pi/4]) aligning two squares.

    Arguments may be squares or raw tilts; the frame has tilt 0.
    """
    ta = a.tilt if isinstance(a, UnitSquare) else float(a) % QUARTER_TURN
    tb = b.tilt if isinstance(b, UnitSquare) else float(b) % QUARTER_TURN
    d = abs(ta - tb)
    return min(d, QUARTER_TURN - d)


def is_good(square: UnitSquare, cfg: GoodnessConfig = GoodnessConfig()) -> bool:
    return theta(square, 0.0) <= cfg.c


def bad_square_indices(p: Packing, cfg: GoodnessConfig = GoodnessConfig()) -> list[int]:
    return [i for i, sq in enumerate(p.squares) if not is_good(sq, cfg)]


# ---------------------------------------------------------------------------
# Validity


@dataclass(frozen=True)
class Violation:
    kind: str                  # "containment" | "overlap"
    indices: tuple[int, ...]
    detail: str


def _penetration(a: UnitSquare, b: UnitSquare) -> float:
    """Separating-axis depth: positive when the squares overlap."""
    dx, dy = b.cx - a.cx, b.cy - a.cy
    depth = math.inf
    for ang in (a.tilt, a.tilt + QUARTER_TURN, b.tilt, b.tilt + QUARTER_TURN):
        proj = abs(dx * math.cos(ang) + dy * math.sin(ang))
        gap = a.half_extent(ang) + b.half_extent(ang) - proj
        if gap < depth:
            depth = gap
    return depth


def _bucket_map(p: Packing) -> dict[tuple[int, int], list[int]]:
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, sq in enumerate(p.squares):
        buckets.setdefault((math.floor(sq.cx), math.floor(sq.cy)), []).append(i)
    return buckets


def _neighbor_indices(buckets, sq: UnitSquare) -> list[int]:
    bx, by = math.floor(sq.cx), math.floor(sq.cy)
    out: list[int] = []
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            out.extend(buckets.get((bx + dx, by + dy), ()))
    return out


def validate_packing(p: Packing) -> list[Violation]:
    """Check frame containment and pairwise non-overlap.

    Returns found violations (empty list means valid); the overlap scan
    stops at the first offending pair.  Contact of measure zero is fine.
    """
    violations: list[Violation] = []
    for i, sq in enumerate(p.squares):
        corners = sq.corners()
        if corners.min() < -CONTAIN_TOL or corners.max() > p.x + CONTAIN_TOL:
            violations.append(Violation(
                "containment", (i,),
                f"square {i} leaves the frame [0, {p.x}]^2",
            ))
    buckets = _bucket_map(p)
    for i, sq in enumerate(p.squares):
        for j in _neighbor_indices(buckets, sq):
            if j <= i:
                continue
            depth = _penetration(sq, p.squares[j])
            if depth >= OVERLAP_TOL:
                violations.append(Violation(
                    "overlap", (i, j),
                    f"squares {i} and {j} overlap with depth {depth:.3g}",
                ))
                return violations
    return violations


# ---------------------------------------------------------------------------
# Waste


def waste_total(p: Packing) -> float:
    """Exact wasted area of the whole frame: ``x**2 - number of squares``."""
    return p.x * p.x - len(p.squares)


class CoverageIndex:
    """Bucketed point-in-any-square queries for a valid packing.

    Centres of non-overlapping unit squares are pairwise at least 1 apart,
    so a unit bucket holds at most four of them and a 3x3 neighbourhood
    suffices for any query point.
    """

    def __init__(self, p: Packing):
        self.packing = p
        k = len(p.squares)
        self.cx = np.array([sq.cx for sq in p.squares])
        self.cy = np.array([sq.cy for sq in p.squares])
        tilts = np.array([sq.tilt for sq in p.squares])
        self.cos = np.cos(tilts)
        self.sin = np.sin(tilts)
        self.gx = max(1, math.ceil(p.x))
        self.gy = self.gx
        bx = np.clip(np.floor(self.cx).astype(np.int64), 0, self.gx - 1)
        by = np.clip(np.floor(self.cy).astype(np.int64), 0, self.gy - 1)
        flat = bx * self.gy + by
        counts = np.bincount(flat, minlength=self.gx * self.gy)
        cap = int(counts.max()) if k else 1
        if cap > 4:
            raise ValueError("more than four square centres share a unit cell; "
                             "is the packing valid?")
        self.table = np.full((self.gx * self.gy, cap), -1, dtype=np.int64)
        slot = np.zeros(self.gx * self.gy, dtype=np.int64)
        for i, b in enumerate(flat.tolist()):
            self.table[b, slot[b]] = i
            slot[b] += 1

    def covered(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Boolean mask: point lies in some unit square (boundary counts)."""
        out = np.zeros(xs.shape, dtype=bool)
        if self.cx.size == 0:
            return out
        bx = np.clip(np.floor(xs).astype(np.int64), 0, self.gx - 1)
        by = np.clip(np.floor(ys).astype(np.int64), 0, self.gy - 1)
        for dx in (-1, 0, 1):
            nbx = np.clip(bx + dx, 0, self.gx - 1)
            for dy in (-1, 0, 1):
                nby = np.clip(by + dy, 0, self.gy - 1)
                cells = nbx * self.gy + nby
                for s in range(self.table.shape[1]):
                    idx = self.table[cells, s]
                    live = idx >= 0
                    if not live.any():
                        continue
                    i = np.where(live, idx, 0)
                    px = xs - self.cx[i]
                    py = ys - self.cy[i]
                    u = px * self.cos[i] + py * self.sin[i]
                    v = -px * self.sin[i] + py * self.cos[i]
                    inside = (np.abs(u) <= 0.5) & (np.abs(v) <= 0.5) & live
                    out |= inside
        return out


# ---------------------------------------------------------------------------
# Regions


@dataclass(frozen=True)
class Disk:
    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        if not self.r > 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class RectRegion:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError("rectangle region has negative extent")


@dataclass(frozen=True)
class Tube:
    """All points within distance < r of a polyline."""

    points: tuple[tuple[float, float], ...]
    r: float

    def __post_init__(self) -> None:
        if not self.r > 0:
            raise ValueError("tube radius must be positive")
        if len(self.points) < 2:
            raise ValueError("tube needs at least two points; use a Disk")


@dataclass(frozen=True)
class UnionRegion:
    parts: tuple["Region", ...]


Region = Union[Disk, RectRegion, Tube, UnionRegion]


def tube_region(points: Sequence[tuple[float, float]], r: float) -> Region:
    """Region within distance r of a polyline; degenerates to a disk."""
    if not points:
        raise ValueError("empty path")
    distinct: list[tuple[float, float]] = []
    for pt in points:
        pt = (float(pt[0]), float(pt[1]))
        if not distinct or pt != distinct[-1]:
            distinct.append(pt)
    if len(distinct) == 1:
        return Disk(distinct[0][0], distinct[0][1], r)
    return Tube(tuple(distinct), r)


def region_bbox(region: Region) -> tuple[float, float, float, float]:
    if isinstance(region, Disk):
        return (region.cx - region.r, region.cy - region.r,
                region.cx + region.r, region.cy + region.r)
    if isinstance(region, RectRegion):
        return (region.x0, region.y0, region.x1, region.y1)
    if isinstance(region, Tube):
        xs = [p[0] for p in region.points]
        ys = [p[1] for p in region.points]
        return (min(xs) - region.r, min(ys) - region.r,
                max(xs) + region.r, max(ys) + region.r)
    if isinstance(region, UnionRegion):
        boxes = [region_bbox(part) for part in region.parts]
        if not boxes:
            return (0.0, 0.0, 0.0, 0.0)
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))
    raise TypeError(f"not a region: {region!r}")


def _segment_dist2(xs, ys, a, b) -> np.ndarray:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    den = dx * dx + dy * dy
    if den == 0:
        return (xs - ax) ** 2 + (ys - ay) ** 2
    t = np.clip(((xs - ax) * dx + (ys - ay) * dy) / den, 0.0, 1.0)
    return (xs - (ax + t * dx)) ** 2 + (ys - (ay + t * dy)) ** 2


def region_contains(region: Region, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    if isinstance(region, Disk):
        return (xs - region.cx) ** 2 + (ys - region.cy) ** 2 < region.r ** 2
    if isinstance(region, RectRegion):
        return (
            (xs >= region.x0) & (xs <= region.x1)
            & (ys >= region.y0) & (ys <= region.y1)
        )
    if isinstance(region, Tube):
        r2 = region.r ** 2
        out = np.zeros(xs.shape, dtype=bool)
        pts = region.points
        for a, b in zip(pts, pts[1:]):
            rest = ~out
            if not rest.any():
                break
            out[rest] = _segment_dist2(xs[rest], ys[rest], a, b) < r2
        return out
    if isinstance(region, UnionRegion):
        out = np.zeros(xs.shape, dtype=bool)
        for part in region.parts:
            out |= region_contains(part, xs, ys)
        return out
    raise TypeError(f"not a region: {region!r}")


@dataclass(frozen=True)
class WasteEstimate:
    """Monte-Carlo waste estimate with a 99% confidence half-width."""

    value: float
    half_width: float
    samples: int


def waste_in_region(p: Packing, region: Region, samples: int, seed) -> WasteEstimate:
    """Estimate the area inside the frame and region covered by no square.

    Samples uniformly from the region's bounding box clipped to the frame;
    deterministic for a fixed seed (chunks draw from spawned child seeds,
    so a parallel evaluation would produce the identical estimate).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    bx0, by0, bx1, by1 = region_bbox(region)
    bx0, by0 = max(bx0, 0.0), max(by0, 0.0)
    bx1, by1 = min(bx1, p.x), min(by1, p.x)
    if bx1 <= bx0 or by1 <= by0:
        return WasteEstimate(0.0, 0.0, samples)
    area = (bx1 - bx0) * (by1 - by0)
    index = CoverageIndex(p)
    hits = 0
    seeds = np.random.SeedSequence(seed).spawn(math.ceil(samples / _CHUNK))
    remaining = samples
    for child in seeds:
        n = min(_CHUNK, remaining)
        remaining -= n
        rng = np.random.default_rng(child)
        xs = rng.uniform(bx0, bx1, n)
        ys = rng.uniform(by0, by1, n)
        mask = region_contains(region, xs, ys)
        if mask.any():
            mask &= ~index.covered(xs, ys)
        hits += int(np.count_nonzero(mask))
    p_hat = hits / samples
    half = _Z99 * math.sqrt(p_hat * (1.0 - p_hat) / samples) * area
    return WasteEstimate(p_hat * area, half, samples)


# ---------------------------------------------------------------------------
# Distances and generators


def point_square_distance(sq: UnitSquare, x: float, y: float) -> float:
    """Distance from a point to the filled square (0 when inside)."""
    px, py = x - sq.cx, y - sq.cy
    c, s = math.cos(sq.tilt), math.sin(sq.tilt)
    u = px * c + py * s
    v = -px * s + py * c
    return math.hypot(max(abs(u) - 0.5, 0.0), max(abs(v) - 0.5, 0.0))


def point_frame_distance(p: Packing, x: float, y: float) -> float:
    """Distance to the frame's boundary-and-outside region (0 outside)."""
    if x <= 0 or x >= p.x or y <= 0 or y >= p.x:
        return 0.0
    return min(x, y, p.x - x, p.x - y)


def jittered_lattice(
    x: float,
    q: float,
    delta: float,
    tau: float,
    seed,
    max_tries: int = 20,
) -> Packing:
    """Random packing: integer lattice sites, thinned, jittered and tilted.

    Each surviving site draws offsets in [-delta, delta]^2 and a tilt in
    [-tau, tau]; draws that would overlap an accepted square or leave the
    frame are rejected and retried, falling back to the unperturbed square
    (or dropping the site when even that collides).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    side = math.floor(x + 1e-12)
    accepted: list[UnitSquare] = []
    buckets: dict[tuple[int, int], list[int]] = {}

    def ok(sq: UnitSquare) -> bool:
        corners = sq.corners()
        if corners.min() < -CONTAIN_TOL or corners.max() > x + CONTAIN_TOL:
            return False
        bx, by = math.floor(sq.cx), math.floor(sq.cy)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for i in buckets.get((bx + dx, by + dy), ()):
                    if _penetration(sq, accepted[i]) >= OVERLAP_TOL:
                        return False
        return True

    def accept(sq: UnitSquare) -> None:
        buckets.setdefault((math.floor(sq.cx), math.floor(sq.cy)), []).append(len(accepted))
        accepted.append(sq)

    for a in range(side):
        for b in range(side):
            if rng.random() < q:
                continue
            base = UnitSquare(a + 0.5, b + 0.5, 0.0)
            placed = False
            for _ in range(max_tries):
                cand = UnitSquare(
                    base.cx + rng.uniform(-delta, delta),
                    base.cy + rng.uniform(-delta, delta),
                    rng.uniform(-tau, tau),
                )
                if ok(cand):
                    accept(cand)
                    placed = True
                    break
            if not placed and ok(base):
                accept(base)

    return Packing(x, tuple(accepted))
