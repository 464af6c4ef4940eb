"""Geometric primitives: intervals on a line, disks in the plane, and
objects composed of up to t base shapes.

All regions are closed; touching counts as intersecting. Coordinates are
plain floats with a global tolerance EPS = 1e-9 for point deduplication
and tangency handling (generators keep coordinates well separated, so the
tolerance is never load-bearing for random inputs).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

EPS = 1e-9

# A point is a tuple of 1 (line) or 2 (plane) coordinates.
Point = tuple

__all__ = [
    "EPS",
    "Point",
    "Interval",
    "Disk",
    "TObject",
    "KindMismatchError",
    "DegenerateTangencyWarning",
    "shape_kind",
    "intersects",
    "t_intersects",
    "contains_point",
    "constraint_points",
    "union_vertex_count",
    "circle_intersections",
]


class KindMismatchError(ValueError):
    """Raised when intervals and disks are mixed in one operation."""


class DegenerateTangencyWarning(UserWarning):
    """Tangency that survives the deterministic perturbation."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Disk:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"disk requires r > 0, got r={self.r}")


@dataclass(frozen=True)
class TObject:
    """Union of up to t base shapes treated as one selectable object."""

    id: int
    parts: tuple
    weight: float

    def __init__(self, id, parts, weight):
        parts = tuple(parts)
        if not parts:
            raise ValueError(f"object {id}: needs at least one part")
        if weight < 0:
            raise ValueError(f"object {id}: weight must be >= 0, got {weight}")
        object.__setattr__(self, "id", int(id))
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", float(weight))


def shape_kind(shape) -> str:
    if isinstance(shape, Interval):
        return "interval"
    if isinstance(shape, Disk):
        return "disk"
    raise KindMismatchError(f"not a base shape: {shape!r}")


def _require_same_kind(a, b) -> str:
    ka, kb = shape_kind(a), shape_kind(b)
    if ka != kb:
        raise KindMismatchError(f"mixed shape kinds: {ka} vs {kb}")
    return ka


def intersects(a, b) -> bool:
    """True iff the closed regions a and b share at least one point."""
    kind = _require_same_kind(a, b)
    if kind == "interval":
        return a.lo <= b.hi and b.lo <= a.hi
    dx, dy = a.cx - b.cx, a.cy - b.cy
    return math.hypot(dx, dy) <= a.r + b.r


def t_intersects(a: TObject, b: TObject) -> bool:
    """True iff some part of a intersects some part of b."""
    return any(intersects(p, q) for p in a.parts for q in b.parts)


def _shape_contains(shape, p: Point, tol: float = EPS) -> bool:
    if isinstance(shape, Interval):
        if len(p) != 1:
            raise KindMismatchError(f"interval expects a 1-d point, got {p!r}")
        return shape.lo - tol <= p[0] <= shape.hi + tol
    if len(p) != 2:
        raise KindMismatchError(f"disk expects a 2-d point, got {p!r}")
    return math.hypot(p[0] - shape.cx, p[1] - shape.cy) <= shape.r + tol


def contains_point(obj: TObject, p: Point) -> bool:
    """True iff p lies in the closed union of the object's parts."""
    return any(_shape_contains(s, p) for s in obj.parts)


def circle_intersections(a: Disk, b: Disk, tol: float = EPS):
    """Boundary intersection points of two circles.

    Returns 0 points for disjoint or nested circles, 1 for tangency
    (within tol), 2 for a proper crossing.
    """
    dx, dy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(dx, dy)
    if d <= tol and abs(a.r - b.r) <= tol:
        return []  # coincident circles: no isolated vertices
    if d > a.r + b.r + tol or d < abs(a.r - b.r) - tol:
        return []
    if abs(d - (a.r + b.r)) <= tol or abs(d - abs(a.r - b.r)) <= tol:
        # tangent: single touching point along the center line
        if abs(d - (a.r + b.r)) <= tol:
            s = a.r / d  # external tangency
        else:
            s = a.r / d if a.r >= b.r else -a.r / d  # internal tangency
        return [(a.cx + s * dx, a.cy + s * dy)]
    # proper crossing: classic two-point construction
    h = (a.r * a.r - b.r * b.r + d * d) / (2 * d)
    sq = a.r * a.r - h * h
    if sq < 0:
        sq = 0.0
    w = math.sqrt(sq)
    mx, my = a.cx + h * dx / d, a.cy + h * dy / d
    ox, oy = -dy / d * w, dx / d * w
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


def _dedup_points(points, tol: float = EPS):
    """Deduplicate points within tol, deterministically (sorted order)."""
    out = []
    for p in sorted(points):
        dup = False
        for q in reversed(out):
            if p[0] - q[0] > tol:
                break  # sorted by first coord: nothing earlier can match
            if all(abs(x - y) <= tol for x, y in zip(p, q)):
                dup = True
                break
        if not dup:
            out.append(p)
    return out


def _uniform_kind(objects) -> str:
    kinds = {shape_kind(s) for o in objects for s in o.parts}
    if len(kinds) != 1:
        raise KindMismatchError(f"mixed shape kinds in collection: {sorted(kinds)}")
    return kinds.pop()


def constraint_points(objects) -> list:
    """Finite witness set for the arrangement of the objects' parts.

    Guarantee: whenever two objects intersect, some returned point lies in
    both. Beyond boundary crossings this needs containment witnesses, so
    overlap midpoints (intervals) and disk centers are added.
    """
    if not objects:
        raise ValueError("constraint_points requires a nonempty collection")
    kind = _uniform_kind(objects)
    parts = [s for o in objects for s in o.parts]
    pts = []
    if kind == "interval":
        for s in parts:
            pts.append((s.lo,))
            pts.append((s.hi,))
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                a, b = parts[i], parts[j]
                if intersects(a, b):
                    pts.append(((max(a.lo, b.lo) + min(a.hi, b.hi)) / 2.0,))
    else:
        for s in parts:
            pts.append((s.cx, s.cy))
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                pts.extend(circle_intersections(parts[i], parts[j]))
    return _dedup_points(pts)


def _merged_interval_components(shapes):
    comps = 0
    cur_hi = None
    for s in sorted(shapes, key=lambda s: (s.lo, s.hi)):
        if cur_hi is None or s.lo > cur_hi:
            comps += 1
            cur_hi = s.hi
        else:
            cur_hi = max(cur_hi, s.hi)
    return comps


def union_vertex_count(shapes) -> int:
    """Number of vertices on the boundary of the union.

    Intervals: boundary endpoints of the union, i.e. twice the number of
    connected components. Disks: circle-circle crossing points not strictly
    interior to any other disk. Exact tangencies are resolved by inflating
    the lower-index disk radius by 1e-12; if a tangency survives even that,
    a DegenerateTangencyWarning is emitted and the touching point is
    counted once.
    """
    if not shapes:
        return 0
    kinds = {shape_kind(s) for s in shapes}
    if len(kinds) != 1:
        raise KindMismatchError(f"mixed shape kinds: {sorted(kinds)}")
    if kinds.pop() == "interval":
        return 2 * _merged_interval_components(shapes)

    disks = list(shapes)
    n = len(disks)
    radii = [d.r for d in disks]
    # deterministic symbolic perturbation for exact tangencies
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(disks[i].cx - disks[j].cx, disks[i].cy - disks[j].cy)
            if abs(d - (radii[i] + radii[j])) <= EPS or abs(d - abs(radii[i] - radii[j])) <= EPS:
                radii[i] += 1e-12
    work = [Disk(d.cx, d.cy, r) for d, r in zip(disks, radii)]

    vertices = []
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(work[i].cx - work[j].cx, work[i].cy - work[j].cy)
            if abs(d - (work[i].r + work[j].r)) <= EPS or abs(d - abs(work[i].r - work[j].r)) <= EPS:
                warnings.warn(
                    f"disks {i} and {j} remain tangent after perturbation",
                    DegenerateTangencyWarning,
                )
            for p in circle_intersections(work[i], work[j]):
                interior = any(
                    k != i
                    and k != j
                    and math.hypot(p[0] - work[k].cx, p[1] - work[k].cy) < work[k].r - EPS
                    for k in range(n)
                )
                if not interior:
                    vertices.append(p)
    return len(_dedup_points(vertices))
