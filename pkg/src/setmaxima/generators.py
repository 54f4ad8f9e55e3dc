"""Seeded instance generators: abstract set systems, convex-polygon
instances, axis-rectangle instances, and key permutations.

Every generator takes an explicit seed and is deterministic; there is no
wall-clock entropy anywhere.  Geometric generators resample polygons that
would break downstream assumptions: empty or duplicate induced sets, and
nested polygons (nesting makes side-count-bounded covers impossible, so we
keep generated instances in general position).
"""

from __future__ import annotations

import math
import random

from .geometry import COORD_BOUND, ConvexPolygon, Point2, contains_polygon, strict_hull
from .geomlattice import GeometricInstance, _PointIndex
from .order import KeySpace
from .setsystem import SetSystem


class GenerationError(Exception):
    """The requested instance could not be produced within bounded retries."""


def gen_keys(n: int, seed: int) -> KeySpace:
    return KeySpace.random(n, seed)


def gen_random_system(n: int, m: int, density: float, seed: int) -> SetSystem:
    """m distinct non-empty random subsets of [0..n); each element joins a
    set with probability ``density``."""
    if not 0 < density <= 1:
        raise ValueError(f"density must be in (0, 1], got {density}")
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if m > (1 << n) - 1:
        raise GenerationError(f"cannot build {m} distinct non-empty subsets of {n} elements")
    rng = random.Random(seed)
    sets: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for _ in range(m):
        for _attempt in range(200):
            s = frozenset(e for e in range(n) if rng.random() < density)
            if s and s not in seen:
                seen.add(s)
                sets.append(s)
                break
        else:
            raise GenerationError(
                f"no fresh non-empty subset after 200 tries (n={n}, m={m}, density={density})"
            )
    return SetSystem(n=n, sets=tuple(sets))


def sample_convex_polygon(
    rng: random.Random, k: int, center: tuple[int, int], radius: int
) -> ConvexPolygon | None:
    """A random strictly convex polygon with at most k sides: sample 3k
    points in a disc, hull them, subsample evenly if the hull is too big."""
    cands = []
    for _ in range(3 * k):
        ang = rng.uniform(0.0, 2 * math.pi)
        rad = radius * math.sqrt(rng.random())
        x = min(COORD_BOUND, max(0, center[0] + round(rad * math.cos(ang))))
        y = min(COORD_BOUND, max(0, center[1] + round(rad * math.sin(ang))))
        cands.append(Point2(x, y))
    hull = strict_hull(cands)
    if len(hull) < 3:
        return None
    if len(hull) > k:
        step = len(hull) / k
        hull = [hull[int(i * step)] for i in range(k)]
    return ConvexPolygon(tuple(hull))


def _default_radius(m: int, box: int) -> int:
    # aim for total polygon area about 1.5x the box, so points overlap a
    # couple of polygons on average regardless of m
    frac = min(0.45, math.sqrt(1.5 / (0.7 * math.pi * m)))
    return max(8, int(frac * box))


class _NestGrid:
    """Coarse grid over polygon centers for pairwise nesting checks."""

    def __init__(self, cell: int):
        self.cell = max(1, cell)
        self.cells: dict[tuple[int, int], list[ConvexPolygon]] = {}

    def _key(self, poly: ConvexPolygon) -> tuple[int, int]:
        xmin, ymin, xmax, ymax = poly.bbox()
        return (int(xmin + xmax) // (2 * self.cell), int(ymin + ymax) // (2 * self.cell))

    def nests_with_any(self, poly: ConvexPolygon) -> bool:
        cx, cy = self._key(poly)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for other in self.cells.get((cx + dx, cy + dy), ()):
                    if contains_polygon(other, poly) or contains_polygon(poly, other):
                        return True
        return False

    def add(self, poly: ConvexPolygon) -> None:
        self.cells.setdefault(self._key(poly), []).append(poly)


def gen_convex_instance(
    n: int,
    m: int,
    k: int,
    seed: int,
    radius: int | None = None,
    box: int = COORD_BOUND,
) -> GeometricInstance:
    """n random points and m random convex polygons of at most k sides.

    The induced set system is guaranteed valid (every polygon holds a
    point, no two polygons induce the same set) and polygon pairs are
    never nested.
    """
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    rng = random.Random(seed)
    points = tuple(
        Point2(rng.randrange(box + 1), rng.randrange(box + 1)) for _ in range(n)
    )
    index = _PointIndex(points)
    radius = radius if radius is not None else _default_radius(m, box)
    grid = _NestGrid(cell=2 * radius)
    polygons: list[ConvexPolygon] = []
    memberships: set[frozenset[int]] = set()
    for _slot in range(m):
        for _attempt in range(400):
            center = (
                rng.randrange(radius, box - radius + 1),
                rng.randrange(radius, box - radius + 1),
            )
            poly = sample_convex_polygon(rng, k, center, radius)
            if poly is None:
                continue
            members = index.members(poly)
            if not members or members in memberships:
                continue
            if grid.nests_with_any(poly):
                continue
            polygons.append(poly)
            memberships.add(members)
            grid.add(poly)
            break
        else:
            raise GenerationError(
                f"could not place polygon {len(polygons) + 1} of {m} "
                f"(n={n}, k={k}, radius={radius}, seed={seed})"
            )
    return GeometricInstance(points=points, polygons=tuple(polygons), k=k)


def gen_rect_instance(
    n: int, m: int, seed: int, box: int = COORD_BOUND
) -> GeometricInstance:
    """Axis-aligned rectangles (k=4) in generic position: all edge
    coordinates are globally distinct, so no two rectangle boundaries share
    collinear segments, and no rectangle nests inside another."""
    rng = random.Random(seed)
    points = tuple(
        Point2(rng.randrange(box + 1), rng.randrange(box + 1)) for _ in range(n)
    )
    index = _PointIndex(points)
    span_lo, span_hi = box // 12, box // 3
    used: set[int] = set()
    rects: list[ConvexPolygon] = []
    memberships: set[frozenset[int]] = set()

    def fresh(lo: int, hi: int) -> int:
        for _ in range(200):
            v = rng.randrange(lo, hi)
            if v not in used:
                used.add(v)
                return v
        raise GenerationError("coordinate pool exhausted")

    for _slot in range(m):
        for _attempt in range(400):
            w = rng.randrange(span_lo, span_hi)
            h = rng.randrange(span_lo, span_hi)
            x1 = fresh(0, box - w)
            y1 = fresh(0, box - h)
            x2 = fresh(x1 + max(1, w // 2), x1 + w + 1)
            y2 = fresh(y1 + max(1, h // 2), y1 + h + 1)
            rect = ConvexPolygon(
                (Point2(x1, y1), Point2(x2, y1), Point2(x2, y2), Point2(x1, y2))
            )
            members = index.members(rect)
            nested = any(
                contains_polygon(rect, other) or contains_polygon(other, rect)
                for other in rects
            )
            if not members or members in memberships or nested:
                for v in (x1, y1, x2, y2):
                    used.discard(v)
                continue
            rects.append(rect)
            memberships.add(members)
            break
        else:
            raise GenerationError(f"could not place rectangle {len(rects) + 1} of {m}")
    return GeometricInstance(points=points, polygons=tuple(rects), k=4)
