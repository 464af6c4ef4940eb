"""Independent set and capacitated region packing via LP relaxation and
sample-and-prune rounding.

The MWIS rounder draws a uniform priority per object, samples candidates
with probability x_i / 4, and keeps candidates in priority order whenever
they conflict with nothing already kept. The best of `trials` seeded runs
is returned; a deterministic weight-greedy pass always participates in the
best-of so small instances cannot lose to sampling variance. Feasibility
of the winner is re-verified with exact pairwise predicates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import constraint_points, contains_point, t_intersects
from .instances import PackInstance
from .lp import LpModel, LpRow, build_packing_lp, solve_lp

__all__ = [
    "PackingResult",
    "build_mwis_lp",
    "round_mwis",
    "solve_mwis",
    "solve_region_packing",
]

DEFAULT_TRIALS = 20


@dataclass(frozen=True)
class PackingResult:
    chosen: tuple          # sorted object ids
    weight: float
    lp_value: float
    trials_used: int


def build_mwis_lp(objects) -> LpModel:
    """max sum w_i x_i  s.t.  sum of x over objects containing p <= 1
    for every witness point p of the arrangement."""
    objects = tuple(objects)
    rows = []
    for p in constraint_points(objects):
        cols = tuple(i for i, obj in enumerate(objects) if contains_point(obj, p))
        rows.append(LpRow(tuple((i, 1.0) for i in cols), "<=", 1.0))
    return LpModel("max", tuple(o.weight for o in objects), tuple(rows), len(objects))


def _greedy_by_weight(objects):
    """Heaviest-first maximal independent set; the deterministic fallback."""
    kept = []
    for i in sorted(range(len(objects)), key=lambda i: (-objects[i].weight, i)):
        if all(not t_intersects(objects[i], objects[j]) for j in kept):
            kept.append(i)
    return kept


def _weight(objects, subset) -> float:
    return sum(objects[i].weight for i in subset)


def _better(objects, a, b):
    """Max weight, ties broken by lexicographically smaller chosen set."""
    wa, wb = _weight(objects, a), _weight(objects, b)
    if wa != wb:
        return a if wa > wb else b
    return a if tuple(sorted(a)) <= tuple(sorted(b)) else b


def round_mwis(objects, x, seed, trials: int = DEFAULT_TRIALS) -> PackingResult:
    """Sample-and-prune rounding of a fractional independent set."""
    values = np.clip(np.asarray(getattr(x, "values", x), dtype=float), 0.0, 1.0)
    if hasattr(x, "objective"):
        lp_value = x.objective
    else:
        lp_value = float(np.asarray([o.weight for o in objects]) @ values)
    n = len(objects)

    best = _greedy_by_weight(objects)
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        priority = rng.random(n)
        sampled = np.flatnonzero(rng.random(n) < values / 4.0)
        kept = []
        for i in sorted(sampled, key=lambda i: priority[i]):
            if all(not t_intersects(objects[i], objects[j]) for j in kept):
                kept.append(int(i))
        best = _better(objects, best, kept)

    for a in range(len(best)):
        for b in range(a + 1, len(best)):
            if t_intersects(objects[best[a]], objects[best[b]]):
                raise AssertionError("rounder produced intersecting objects")
    chosen = tuple(sorted(objects[i].id for i in best))
    return PackingResult(chosen, _weight(objects, best), float(lp_value), trials)


def solve_mwis(objects, seed, trials: int = DEFAULT_TRIALS) -> PackingResult:
    model = build_mwis_lp(objects)
    sol = solve_lp(model)
    return round_mwis(objects, sol, seed, trials)


def _capacity_feasible(objects, points, capacities, subset):
    for p, cap in zip(points, capacities):
        if sum(1 for i in subset if contains_point(objects[i], p)) > cap:
            return False
    return True


def _greedy_by_weight_capacitated(objects, points, capacities):
    kept = []
    counts = [0] * len(points)
    members = [
        [j for j, p in enumerate(points) if contains_point(obj, p)] for obj in objects
    ]
    for i in sorted(range(len(objects)), key=lambda i: (-objects[i].weight, i)):
        if all(counts[j] + 1 <= capacities[j] for j in members[i]):
            kept.append(i)
            for j in members[i]:
                counts[j] += 1
    return kept


def solve_region_packing(inst: PackInstance, seed, trials: int = DEFAULT_TRIALS) -> PackingResult:
    """Pack objects against per-point integer capacities.

    The mwis kind routes through the independent-set rounder. Otherwise:
    scaled sampling with probability x_i * min(1, t^(-1/C)) where C is the
    minimum capacity, then pruning each violated point by dropping its
    lowest-weight members until the capacity holds.
    """
    if inst.kind == "mwis":
        return solve_mwis(inst.objects, seed, trials)

    objects, points, caps = inst.objects, inst.points, inst.capacities
    model = build_packing_lp(inst)
    sol = solve_lp(model)
    values = np.clip(np.asarray(sol.values, dtype=float), 0.0, 1.0)
    c_min = min(caps) if caps else 1
    alpha = min(1.0, inst.t ** (-1.0 / c_min))
    members = [
        [j for j, p in enumerate(points) if contains_point(obj, p)] for obj in objects
    ]
    point_members = [
        [i for i, obj in enumerate(objects) if contains_point(obj, p)] for p in points
    ]

    best = _greedy_by_weight_capacitated(objects, points, caps)
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        kept = set(int(i) for i in np.flatnonzero(rng.random(len(objects)) < values * alpha))
        for j in range(len(points)):
            over = sum(1 for i in point_members[j] if i in kept) - caps[j]
            if over <= 0:
                continue
            offenders = sorted(
                (i for i in point_members[j] if i in kept),
                key=lambda i: (objects[i].weight, -i),
            )
            for i in offenders[:over]:
                kept.discard(i)
        trial_set = sorted(kept)
        if _capacity_feasible(objects, points, caps, trial_set):
            best = _better(objects, best, trial_set)

    if not _capacity_feasible(objects, points, caps, best):
        raise AssertionError("packing output violates a capacity")
    chosen = tuple(sorted(objects[i].id for i in best))
    return PackingResult(chosen, _weight(objects, best), sol.objective, trials)
