"""Convex-polygon set systems: containment-induced systems, per-node
intersection regions, side-count-bounded covers, and the circle embedding.

The cover construction works edge by edge on a node's region Q: an edge
contributed solely by polygons outside an index subset witnesses a strictly
larger region whose label is that subset.  Any hitting set of at most k
edges (k = max polygon side count) yields a cover of size <= k; pairs whose
joint region exceeds Q get merged.  Labels that are not lattice nodes are
inserted as virtual nodes (empty class) and covered recursively.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import (
    COORD_BOUND,
    OUTSIDE,
    Chain,
    ConvexPolygon,
    GeometryError,
    Point2,
    _as_exact,
    chains,
    clip_convex,
    orientation,
    point_in_convex,
    segment_in_segment,
)
from .lattice import (
    Label,
    Lattice,
    build_lattice,
    compute_parents,
    format_label,
    good_cover_greedy,
    label_sort_key,
)
from .order import ComparisonLedger, KeySpace
from .setsystem import SetSystem
from .solvers import MaximaResult, solve_lattice


class InternalInconsistencyError(Exception):
    """Exact-arithmetic invariant broke; indicates a predicate bug."""


@dataclass(frozen=True)
class GeometricInstance:
    """Points (one per element) and convex polygons (one per set)."""

    points: tuple[Point2, ...]
    polygons: tuple[ConvexPolygon, ...]
    k: int

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.polygons)

    def validate(self) -> list[str]:
        violations = []
        if self.k < 3:
            violations.append(f"k={self.k} must be at least 3")
        for idx, p in enumerate(self.points):
            if abs(p[0]) > COORD_BOUND or abs(p[1]) > COORD_BOUND:
                violations.append(f"point {idx} exceeds the coordinate bound")
        for j, poly in enumerate(self.polygons, start=1):
            if not poly.is_degenerate and poly.sides > self.k:
                violations.append(f"polygon {j} has {poly.sides} > k sides")
            for v in poly.vertices:
                if abs(v[0]) > COORD_BOUND or abs(v[1]) > COORD_BOUND:
                    violations.append(f"polygon {j} exceeds the coordinate bound")
                    break
        return violations

    def require_valid(self) -> "GeometricInstance":
        violations = self.validate()
        if violations:
            raise ValueError("invalid geometric instance: " + "; ".join(violations))
        return self


class _PointIndex:
    """Points sorted by x for bbox prefiltering of containment queries."""

    def __init__(self, points: tuple[Point2, ...]):
        arr = np.asarray([[int(p[0]), int(p[1])] for p in points], dtype=np.int64)
        arr = arr.reshape(len(points), 2)
        self.coords = arr
        self.order = np.argsort(arr[:, 0], kind="stable") if len(points) else np.empty(0, np.int64)
        self.xs = arr[self.order, 0] if len(points) else np.empty(0, np.int64)

    def members(self, poly: ConvexPolygon) -> frozenset[int]:
        if len(self.coords) == 0:
            return frozenset()
        if poly.is_degenerate:
            return frozenset(
                int(i)
                for i in range(len(self.coords))
                if point_in_convex(poly, Point2(int(self.coords[i, 0]), int(self.coords[i, 1])))
                != OUTSIDE
            )
        xmin, ymin, xmax, ymax = poly.bbox()
        lo = int(np.searchsorted(self.xs, xmin, side="left"))
        hi = int(np.searchsorted(self.xs, xmax, side="right"))
        cand = self.order[lo:hi]
        ys = self.coords[cand, 1]
        cand = cand[(ys >= ymin) & (ys <= ymax)]
        if cand.size == 0:
            return frozenset()
        px = self.coords[cand, 0]
        py = self.coords[cand, 1]
        keep = np.ones(cand.size, dtype=bool)
        for a, b in poly.edges():
            cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0])
            keep &= cross >= 0
        return frozenset(int(e) for e in cand[keep])


def induced_membership(instance: GeometricInstance) -> list[frozenset[int]]:
    """Per-polygon member sets: element i belongs to polygon j when it lies
    in the interior or on the perimeter.  Exact (int64 stays in range
    because coordinates are bounded)."""
    index = _PointIndex(instance.points)
    return [index.members(poly) for poly in instance.polygons]


def induced_system(instance: GeometricInstance) -> SetSystem:
    return SetSystem(n=instance.n, sets=tuple(induced_membership(instance)))


class RegionCache:
    """Memoized intersection regions Q_I, shared across all cover work.

    Regions are computed by clipping along the sorted label prefix so that
    nested labels share work.  A cached value of None means the region is
    empty; degenerate regions are cached as degenerate polygons.
    """

    def __init__(self, instance: GeometricInstance):
        self.polygons = instance.polygons
        self._memo: dict[tuple[int, ...], ConvexPolygon | None] = {}

    def region(self, label: Label) -> ConvexPolygon | None:
        key = tuple(sorted(label))
        if key in self._memo:
            return self._memo[key]
        if len(key) == 1:
            result = self.polygons[key[0] - 1]
        else:
            base = self.region(frozenset(key[:-1]))
            last = self.polygons[key[-1] - 1]
            if base is None or base.is_degenerate or last.is_degenerate:
                # a degenerate prefix region only shrinks further; treat as empty
                result = None if base is None else _clip_degenerate(base, last)
            else:
                verts = clip_convex(base.vertices, last)
                result = ConvexPolygon(tuple(verts)) if verts else None
        self._memo[key] = result
        return result


def _clip_degenerate(region: ConvexPolygon, poly: ConvexPolygon) -> ConvexPolygon | None:
    if len(region.vertices) == 1:
        inside = point_in_convex(poly, region.vertices[0]) != OUTSIDE
        return region if inside else None
    a, b = region.vertices
    t0, t1 = Fraction(0), Fraction(1)
    for u, v in poly.edges():
        fa = (v[0] - u[0]) * (a[1] - u[1]) - (v[1] - u[1]) * (a[0] - u[0])
        fb = (v[0] - u[0]) * (b[1] - u[1]) - (v[1] - u[1]) * (b[0] - u[0])
        if fa < 0 and fb < 0:
            return None
        if fa >= 0 and fb >= 0:
            continue
        t = Fraction(fa, fa - fb)
        if fa < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    p0 = Point2(_as_exact(a[0] + t0 * (b[0] - a[0])), _as_exact(a[1] + t0 * (b[1] - a[1])))
    p1 = Point2(_as_exact(a[0] + t1 * (b[0] - a[0])), _as_exact(a[1] + t1 * (b[1] - a[1])))
    return ConvexPolygon((p0,)) if p0 == p1 else ConvexPolygon((p0, p1))


@dataclass
class GeometricLattice:
    """Lattice of a geometric instance plus regions and per-node covers."""

    instance: GeometricInstance
    system: SetSystem
    lattice: Lattice
    regions: RegionCache
    covers: dict[Label, tuple[Label, ...]]
    fallback_labels: tuple[Label, ...]

    @property
    def fallback_count(self) -> int:
        return len(self.fallback_labels)


def _edge_label_sets(
    label: Label, region: ConvexPolygon, polygons: tuple[ConvexPolygon, ...]
) -> list[frozenset[int]]:
    """For each edge of the region, the indices of ``label`` whose polygon
    does not carry that edge on its boundary (= the edge witnesses them)."""
    out = []
    for a, b in region.edges():
        witness = frozenset(
            i
            for i in label
            if not any(segment_in_segment(a, b, u, v) for u, v in polygons[i - 1].edges())
        )
        out.append(witness)
    return out


def _choose_hitting_edges(
    label: Label, edge_sets: list[frozenset[int]], k: int
) -> list[int] | None:
    """A set of at most k edges whose witness sets union to the label.

    The first k edges in boundary order normally suffice; when a polygon
    owns too many of the region's edges for that shortcut, fall back to a
    deterministic greedy choice.  None when no k edges can cover.
    """
    usable = [e for e in range(len(edge_sets)) if edge_sets[e]]
    chosen = usable[:k]
    if chosen and frozenset().union(*(edge_sets[e] for e in chosen)) >= label:
        return chosen
    chosen = []
    uncovered = set(label)
    available = list(usable)
    while uncovered and len(chosen) < k:
        best, best_gain = -1, 0
        for e in available:
            gain = len(edge_sets[e] & uncovered)
            if gain > best_gain:
                best, best_gain = e, gain
        if best_gain == 0:
            return None
        chosen.append(best)
        available.remove(best)
        uncovered -= edge_sets[best]
    return sorted(chosen) if not uncovered else None


def geometric_cover(
    label: Label, cache: RegionCache, k: int
) -> tuple[Label, ...] | None:
    """Cover of size <= k for the region of ``label``, or None when the
    construction does not apply (degenerate region, or an index witnessed
    by no edge; callers then fall back to an abstract cover)."""
    region = cache.region(label)
    if region is None:
        raise InternalInconsistencyError(
            f"no region for populated node {format_label(label)}"
        )
    if region.is_degenerate:
        return None
    edge_sets = _edge_label_sets(label, region, cache.polygons)
    hit = frozenset().union(*edge_sets) if edge_sets else frozenset()
    if not hit >= label:
        return None
    chosen = _choose_hitting_edges(label, edge_sets, k)
    if chosen is None:
        return None
    members = sorted({edge_sets[e] for e in chosen}, key=label_sort_key)

    # merge any pair whose joint region still exceeds this node's region
    changed = True
    while changed:
        changed = False
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                union = members[ai] | members[bi]
                joint = cache.region(union)
                if joint is not None and not joint.is_degenerate and joint != region:
                    merged = members[: ai] + members[ai + 1 : bi] + members[bi + 1 :]
                    merged.append(union)
                    members = sorted(set(merged), key=label_sort_key)
                    changed = True
                    break
            if changed:
                break

    for member in members:
        if not member < label:
            raise InternalInconsistencyError(
                f"cover member {format_label(member)} not strictly below "
                f"{format_label(label)}"
            )
        member_region = cache.region(member)
        if member_region is None or member_region.is_degenerate or member_region == region:
            raise InternalInconsistencyError(
                f"cover member {format_label(member)} does not strictly "
                f"enclose the region of {format_label(label)}"
            )
    if len(members) > k:
        return None
    return tuple(members)


def check_cover_chains(
    label: Label, cover: tuple[Label, ...], cache: RegionCache
) -> dict[Label, list[Chain]]:
    """Chain disjointness of a computed cover: chains of distinct cover
    members over the node's region must not share edges, and every member
    must produce at least one chain.  Raises on violation."""
    region = cache.region(label)
    per_member: dict[Label, list[Chain]] = {}
    for member in cover:
        cs = chains(cache.region(member), region)
        if not cs:
            raise InternalInconsistencyError(
                f"cover member {format_label(member)} of {format_label(label)} "
                "has no chains"
            )
        per_member[member] = cs
    labels = sorted(per_member, key=label_sort_key)
    for ai in range(len(labels)):
        for bi in range(ai + 1, len(labels)):
            ea = frozenset().union(*(c.edge_set() for c in per_member[labels[ai]]))
            eb = frozenset().union(*(c.edge_set() for c in per_member[labels[bi]]))
            if ea & eb:
                raise InternalInconsistencyError(
                    f"chains of {format_label(labels[ai])} and "
                    f"{format_label(labels[bi])} overlap on {format_label(label)}"
                )
    return per_member


def build_geometric_lattice(instance: GeometricInstance) -> GeometricLattice:
    """Induce the set system, build the lattice, and attach geometric covers
    (inserting virtual nodes for cover labels without elements).

    No key comparisons happen anywhere in here.
    """
    instance.require_valid()
    system = induced_system(instance).require_valid()
    lattice = compute_parents(build_lattice(system))
    cache = RegionCache(instance)
    covers: dict[Label, tuple[Label, ...]] = {}
    fallbacks: list[Label] = []

    queue = deque(lb for lb in lattice.labels_by_layer() if len(lb) >= 2)
    while queue:
        label = queue.popleft()
        if label in covers:
            continue
        cover = geometric_cover(label, cache, instance.k)
        if cover is None:
            fallbacks.append(label)
            node = lattice.nodes.get(label)
            if node is not None and not node.virtual:
                cover = good_cover_greedy(node, lattice)
            else:
                cover = tuple(frozenset((i,)) for i in sorted(label))
        else:
            check_cover_chains(label, cover, cache)
        covers[label] = cover
        lattice.nodes[label].good_cover = cover
        for member in cover:
            if member not in lattice.nodes:
                lattice.add_virtual(member)
            if len(member) >= 2 and member not in covers:
                queue.append(member)
    return GeometricLattice(
        instance=instance,
        system=system,
        lattice=lattice,
        regions=cache,
        covers=covers,
        fallback_labels=tuple(fallbacks),
    )


def solve_lattice_geometric(
    glat: GeometricLattice,
    keys: KeySpace,
    ledger: ComparisonLedger | None = None,
    debug_check: bool = False,
) -> MaximaResult:
    return solve_lattice(
        glat.system,
        keys,
        ledger=ledger,
        prebuilt=(glat.lattice, glat.covers),
        debug_check=debug_check,
    )


def circle_embedding(system: SetSystem, radius: int = 1 << 18) -> GeometricInstance:
    """Realize an arbitrary set system geometrically: points in strictly
    convex (near-circular) position, one polygon per set spanning exactly
    its members.

    Works for any system; sets with fewer than three members become
    degenerate point/segment polygons that still contain exactly their
    members.  The resulting k is unbounded (max set size), which is the
    whole point: without a side bound the geometry encodes anything.
    """
    system.require_valid()
    n = system.n
    points = _convex_position_points(n, radius)
    polygons = []
    for s in system.sets:
        verts = tuple(points[e] for e in sorted(s))
        polygons.append(ConvexPolygon(verts))
    k = max(3, max((len(s) for s in system.sets), default=3))
    return GeometricInstance(points=tuple(points), polygons=tuple(polygons), k=k)


def _convex_position_points(n: int, radius: int) -> list[Point2]:
    """n integer points in strictly convex position near a circle.

    Snap to the circle, then nudge individual radii until every cyclic
    vertex triple turns strictly left; verified before returning.
    """
    if n == 0:
        return []
    angles = [2 * math.pi * i / n for i in range(n)]
    offsets = [0] * n

    def snapped(i: int) -> Point2:
        r = radius + offsets[i]
        return Point2(round(r * math.cos(angles[i])), round(r * math.sin(angles[i])))

    pts = [snapped(i) for i in range(n)]
    if n >= 3:
        for _ in range(200):
            bad = [
                i
                for i in range(n)
                if orientation(pts[i - 2], pts[i - 1], pts[i]) <= 0
            ]
            if not bad:
                break
            for i in bad:
                j = (i - 1) % n
                offsets[j] += 1
                pts[j] = snapped(j)
        else:
            raise GeometryError(f"could not place {n} points in convex position")
        if len(set(pts)) != n:
            raise GeometryError(f"snapped points collide for n={n}")
    elif len(set(pts)) != n:
        raise GeometryError(f"snapped points collide for n={n}")
    return pts
