"""Exact oracles and instance generators.

The oracles enumerate every subset of the selectable objects (vectorized
through numpy doubling over bitmask/count tables), so they are exhaustive
by construction and capped at 20 objects. Generators are deterministic per
seed and always emit instances that pass validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covering import CoverResult
from .geometry import Disk, Interval, TObject, contains_point, t_intersects
from .instances import CoverInstance, PackInstance, incidence, mwis_instance

__all__ = [
    "SizeLimitError",
    "SetSystem",
    "brute_force_cover",
    "brute_force_packing",
    "brute_force_setcover",
    "gen_t_intervals",
    "gen_t_disks",
    "gen_f_uniform_setcover",
    "reduce_setcover_to_mwds",
    "gen_mwds_instance",
    "gen_mwsc_instance",
    "gen_mwis_instance",
    "gen_region_instance",
]

BRUTE_LIMIT = 20


class SizeLimitError(ValueError):
    pass


def _check_limit(count, what):
    if count > BRUTE_LIMIT:
        raise SizeLimitError(f"brute force capped at {BRUTE_LIMIT} {what}, got {count}")


def _subset_tuple(mask, n):
    return tuple(i for i in range(n) if mask >> i & 1)


def _lane_masks(member_rows, n, m):
    """Per-object coverage bitmasks, split over 62-bit lanes."""
    lanes = max(1, (m + 61) // 62)
    masks = np.zeros((n, lanes), dtype=np.int64)
    for j, row in enumerate(member_rows):
        for i in row:
            masks[i, j // 62] |= np.int64(1) << np.int64(j % 62)
    return masks, lanes


def _subset_costs(weights):
    n = len(weights)
    cost = np.zeros(1 << n)
    for i in range(n):
        size = 1 << i
        cost[size : 2 * size] = cost[:size] + weights[i]
    return cost


def brute_force_cover(inst: CoverInstance) -> CoverResult:
    """Exhaustive minimum-weight cover; ties go to the lexicographically
    smallest index set."""
    n = len(inst.reds)
    _check_limit(n, "reds")
    mat = incidence(inst)
    m = mat.num_rows
    if m == 0:
        return CoverResult("optimal", (), 0.0)
    masks, lanes = _lane_masks(mat.rows, n, m)
    full = np.zeros(lanes, dtype=np.int64)
    for j in range(m):
        full[j // 62] |= np.int64(1) << np.int64(j % 62)

    cov = np.zeros((1 << n, lanes), dtype=np.int64)
    for i in range(n):
        size = 1 << i
        cov[size : 2 * size] = cov[:size] | masks[i]
    feasible = (cov == full).all(axis=1)
    if not feasible.any():
        return CoverResult("infeasible", (), math.inf)
    cost = _subset_costs([o.weight for o in inst.reds])
    best = cost[feasible].min()
    candidates = np.flatnonzero(feasible & (cost <= best + 1e-12))
    pick = min((_subset_tuple(int(s), n) for s in candidates))
    return CoverResult("optimal", pick, float(cost[candidates[0]] if len(candidates) == 1 else best))


def brute_force_packing(inst: PackInstance):
    """Exhaustive maximum-weight feasible subset -> (indices, weight).

    mwis feasibility is pairwise disjointness via the exact intersection
    predicate; region packing feasibility is per-point capacity counting.
    """
    n = len(inst.objects)
    _check_limit(n, "objects")
    if n == 0:
        return (), 0.0
    if inst.kind == "mwis":
        conflict = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if i != j and t_intersects(inst.objects[i], inst.objects[j]):
                    conflict[i] |= np.int64(1) << np.int64(j)
        feasible = np.ones(1 << n, dtype=bool)
        for i in range(n):
            size = 1 << i
            sub = np.arange(size, dtype=np.int64)
            feasible[size : 2 * size] = feasible[:size] & ((sub & conflict[i]) == 0)
    else:
        p = len(inst.points)
        member = np.zeros((n, p), dtype=np.uint8)
        for i, obj in enumerate(inst.objects):
            for j, pt in enumerate(inst.points):
                if contains_point(obj, pt):
                    member[i, j] = 1
        counts = np.zeros((1 << n, p), dtype=np.uint8)
        for i in range(n):
            size = 1 << i
            counts[size : 2 * size] = counts[:size] + member[i]
        caps = np.asarray(inst.capacities, dtype=np.uint8)
        feasible = (counts <= caps).all(axis=1)

    weight = _subset_costs([o.weight for o in inst.objects])
    best = weight[feasible].max()
    candidates = np.flatnonzero(feasible & (weight >= best - 1e-12))
    pick = min((_subset_tuple(int(s), n) for s in candidates))
    return pick, float(best)


# ---------------------------------------------------------------------------
# abstract set systems and the reduction to red-blue domination

@dataclass(frozen=True)
class SetSystem:
    """f-uniform weighted set system: every element lies in exactly f sets."""

    num_sets: int
    weights: tuple
    memberships: tuple  # per element, sorted tuple of containing set indices


def brute_force_setcover(system: SetSystem) -> CoverResult:
    n = system.num_sets
    _check_limit(n, "sets")
    m = len(system.memberships)
    if m == 0:
        return CoverResult("optimal", (), 0.0)
    masks, lanes = _lane_masks(system.memberships, n, m)
    full = np.zeros(lanes, dtype=np.int64)
    for j in range(m):
        full[j // 62] |= np.int64(1) << np.int64(j % 62)
    cov = np.zeros((1 << n, lanes), dtype=np.int64)
    for i in range(n):
        size = 1 << i
        cov[size : 2 * size] = cov[:size] | masks[i]
    feasible = (cov == full).all(axis=1)
    if not feasible.any():
        return CoverResult("infeasible", (), math.inf)
    cost = _subset_costs(list(system.weights))
    best = cost[feasible].min()
    candidates = np.flatnonzero(feasible & (cost <= best + 1e-12))
    pick = min((_subset_tuple(int(s), n) for s in candidates))
    return CoverResult("optimal", pick, float(best))


def gen_f_uniform_setcover(num_elements, num_sets, f, weight_range, seed) -> SetSystem:
    """Every element is put in exactly f sets drawn without replacement."""
    if not 1 <= f <= num_sets:
        raise ValueError(f"need 1 <= f <= num_sets, got f={f}, num_sets={num_sets}")
    rng = np.random.default_rng(seed)
    weights = tuple(float(w) for w in rng.uniform(*weight_range, size=num_sets))
    memberships = tuple(
        tuple(sorted(int(i) for i in rng.choice(num_sets, size=f, replace=False)))
        for _ in range(num_elements)
    )
    return SetSystem(num_sets, weights, memberships)


def reduce_setcover_to_mwds(system: SetSystem, f) -> CoverInstance:
    """Sets become weighted red points on a line; each element becomes a
    blue f-point sitting exactly on the points of the sets containing it.
    Selecting a red covers a blue iff the set contained the element, so
    feasible solutions correspond one to one and weights are preserved."""
    reds = tuple(
        TObject(i, [Interval(float(i), float(i))], w) for i, w in enumerate(system.weights)
    )
    blues = tuple(
        TObject(j, [Interval(float(i), float(i)) for i in members], 0.0)
        for j, members in enumerate(system.memberships)
    )
    return CoverInstance("mwds", int(f), "interval", reds, blues=blues)


# ---------------------------------------------------------------------------
# random geometric generators

def _rand_interval(rng, lo, hi):
    a, b = np.sort(rng.uniform(lo, hi, size=2))
    return Interval(float(a), float(b))


def _rand_disk(rng, lo, hi, rmin, rmax):
    cx, cy = rng.uniform(lo, hi, size=2)
    return Disk(float(cx), float(cy), float(rng.uniform(rmin, rmax)))


def _rand_tobject(rng, oid, t, shape, coord_range, weight_range, radius_range):
    if shape == "interval":
        parts = [_rand_interval(rng, *coord_range) for _ in range(t)]
    else:
        parts = [_rand_disk(rng, *coord_range, *radius_range) for _ in range(t)]
    return TObject(oid, parts, float(rng.uniform(*weight_range)))


def gen_t_intervals(n, t, coord_range, weight_range, seed):
    """n objects of exactly t intervals each; endpoints are sorted uniform
    draws, weights uniform. Byte-stable per seed."""
    rng = np.random.default_rng(seed)
    return [
        _rand_tobject(rng, i, t, "interval", coord_range, weight_range, None)
        for i in range(n)
    ]


def gen_t_disks(n, t, coord_range, radius_range, weight_range, seed):
    rng = np.random.default_rng(seed)
    return [
        _rand_tobject(rng, i, t, "disk", coord_range, weight_range, radius_range)
        for i in range(n)
    ]


DEFAULT_COORD = (0.0, 100.0)
DEFAULT_WEIGHT = (0.5, 2.0)
DEFAULT_RADIUS = (4.0, 12.0)


def _covered_blue(rng, oid, t, shape, reds, coord_range, weight_range, radius_range):
    for _ in range(200):
        cand = _rand_tobject(rng, oid, t, shape, coord_range, weight_range, radius_range)
        if any(t_intersects(cand, red) for red in reds):
            return cand
    # fall back to a part anchored on a random red part
    red = reds[int(rng.integers(len(reds)))]
    part = red.parts[int(rng.integers(len(red.parts)))]
    if shape == "interval":
        mid = (part.lo + part.hi) / 2.0
        span = float(rng.uniform(0.5, 2.0))
        anchored = Interval(mid - span, mid + span)
    else:
        anchored = Disk(part.cx, part.cy, float(rng.uniform(*radius_range)))
    cand = _rand_tobject(rng, oid, t, shape, coord_range, weight_range, radius_range)
    return TObject(oid, (anchored,) + cand.parts[1:], cand.weight)


def gen_mwds_instance(n, m, t, shape, seed, coord_range=DEFAULT_COORD,
                      weight_range=DEFAULT_WEIGHT, radius_range=DEFAULT_RADIUS) -> CoverInstance:
    """Random red-blue domination instance; every blue meets some red."""
    rng = np.random.default_rng([seed, 0])
    reds = tuple(
        _rand_tobject(rng, i, t, shape, coord_range, weight_range, radius_range)
        for i in range(n)
    )
    rng = np.random.default_rng([seed, 1])
    blues = tuple(
        _covered_blue(rng, j, t, shape, reds, coord_range, weight_range, radius_range)
        for j in range(m)
    )
    return CoverInstance("mwds", t, shape, reds, blues=blues)


def _covered_point(rng, shape, reds, coord_range):
    lo, hi = coord_range
    dim = 1 if shape == "interval" else 2
    for _ in range(500):
        p = tuple(float(v) for v in rng.uniform(lo, hi, size=dim))
        if any(contains_point(red, p) for red in reds):
            return p
    red = reds[int(rng.integers(len(reds)))]
    part = red.parts[int(rng.integers(len(red.parts)))]
    if shape == "interval":
        return ((part.lo + part.hi) / 2.0,)
    return (part.cx, part.cy)


def gen_mwsc_instance(n, m, t, shape, seed, coord_range=DEFAULT_COORD,
                      weight_range=DEFAULT_WEIGHT, radius_range=DEFAULT_RADIUS) -> CoverInstance:
    """Random point-cover instance; every point lies in some object."""
    rng = np.random.default_rng([seed, 0])
    reds = tuple(
        _rand_tobject(rng, i, t, shape, coord_range, weight_range, radius_range)
        for i in range(n)
    )
    rng = np.random.default_rng([seed, 1])
    points = tuple(_covered_point(rng, shape, reds, coord_range) for _ in range(m))
    return CoverInstance("mwsc", t, shape, reds, points=points)


def gen_mwis_instance(n, t, shape, seed, coord_range=DEFAULT_COORD,
                      weight_range=DEFAULT_WEIGHT, radius_range=DEFAULT_RADIUS) -> PackInstance:
    rng = np.random.default_rng([seed, 0])
    objects = tuple(
        _rand_tobject(rng, i, t, shape, coord_range, weight_range, radius_range)
        for i in range(n)
    )
    return mwis_instance(objects, t=t, shape=shape)


def gen_region_instance(n, m, t, shape, seed, cap_range=(1, 3), coord_range=DEFAULT_COORD,
                        weight_range=DEFAULT_WEIGHT, radius_range=DEFAULT_RADIUS) -> PackInstance:
    rng = np.random.default_rng([seed, 0])
    objects = tuple(
        _rand_tobject(rng, i, t, shape, coord_range, weight_range, radius_range)
        for i in range(n)
    )
    rng = np.random.default_rng([seed, 1])
    dim = 1 if shape == "interval" else 2
    points = tuple(
        tuple(float(v) for v in rng.uniform(coord_range[0], coord_range[1], size=dim))
        for _ in range(m)
    )
    caps = tuple(int(c) for c in rng.integers(cap_range[0], cap_range[1] + 1, size=m))
    return PackInstance("region_packing", t, shape, objects, points, caps)
