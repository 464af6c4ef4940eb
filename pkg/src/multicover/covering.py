"""Covering pipelines: the reduction from t-object blues to single
constituents, randomized rounding with repair, and the exact interval
solver that exploits LP integrality.

The reduction picks, for every blue, the constituent with the largest
fractional coverage and scales the LP solution by t (capped at 1). The
scaled solution is feasible for the reduced instance and costs at most t
times the original fractional optimum, so any rounder for 1-object blues
carries over at the price of a factor t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import contains_point, intersects
from .instances import CoverInstance, IncidenceMatrix
from .lp import FEAS_TOL, LpSolution, build_cover_lp, solve_lp

__all__ = [
    "CoverResult",
    "ReducedInstance",
    "select_best_constituents",
    "reduce_instance",
    "round_cover",
    "solve_mwds",
    "solve_mwsc",
    "preprocess_blue_intervals",
    "check_consecutive_ones",
    "exact_interval_mwds",
]


@dataclass(frozen=True)
class CoverResult:
    status: str            # "optimal" | "infeasible"
    chosen: tuple          # sorted red indices
    cost: float
    lp_value: float | None = None


@dataclass(frozen=True)
class ReducedInstance:
    original: CoverInstance
    chosen_parts: tuple    # constituent index per blue
    blue_shapes: tuple     # the selected 1-object per blue
    x_prime: tuple         # min(t * x_i, 1) per red


def _part_coverage(part, reds, x) -> float:
    return sum(
        x[i] for i, red in enumerate(reds) if any(intersects(part, rp) for rp in red.parts)
    )


def _check_cover_feasible(inst: CoverInstance, x) -> None:
    mat_rows = build_cover_lp(inst).rows
    for j, row in enumerate(mat_rows):
        if sum(x[i] for i, _ in row.coeffs) < 1.0 - FEAS_TOL:
            raise ValueError(f"solution infeasible for blue {j}")


def select_best_constituents(inst: CoverInstance, x: LpSolution) -> list:
    """Per blue, the index of the part with maximum fractional coverage.

    Ties go to the smallest part index; with t=1 this is identically zero.
    """
    values = x.values if isinstance(x, LpSolution) else x
    out = []
    for blue in inst.blues:
        coverages = [_part_coverage(part, inst.reds, values) for part in blue.parts]
        out.append(max(range(len(coverages)), key=lambda k: (coverages[k], -k)))
    return out


def reduce_instance(inst: CoverInstance, x: LpSolution) -> ReducedInstance:
    """Replace each blue by its best-covered constituent and scale x by t."""
    values = x.values if isinstance(x, LpSolution) else x
    _check_cover_feasible(inst, values)
    chosen = tuple(select_best_constituents(inst, values))
    shapes = tuple(blue.parts[k] for blue, k in zip(inst.blues, chosen))
    x_prime = tuple(min(inst.t * v, 1.0) for v in values)
    return ReducedInstance(inst, chosen, shapes, x_prime)


def _coverers(reds, target):
    """Red indices covering a 1-object (BaseShape) or a ground point."""
    if isinstance(target, tuple):
        return tuple(i for i, red in enumerate(reds) if contains_point(red, target))
    return tuple(
        i for i, red in enumerate(reds) if any(intersects(target, p) for p in red.parts)
    )


def round_cover(reds, blue_targets, x, seed) -> set:
    """Round a fractional cover of 1-object blues (or points) to a set.

    Independent sampling with inclusion probability min(1, x_i * ln(2M+2)),
    accumulated over up to three rounds, then greedy weight-over-new-coverage
    repair for any stragglers, then reverse deletion of redundant reds.
    Deterministic for a fixed seed; the result always covers every target.
    """
    coverers = [_coverers(reds, t) for t in blue_targets]
    for j, cov in enumerate(coverers):
        if not cov:
            raise ValueError(f"target {j} is uncoverable")
    n, m = len(reds), len(blue_targets)
    probs = np.minimum(1.0, np.asarray(x, dtype=float) * math.log(2 * m + 2))
    rng = np.random.default_rng(seed)

    chosen = set()
    for _ in range(3):
        draws = rng.random(n)
        chosen.update(int(i) for i in np.flatnonzero(draws < probs))
        if all(any(i in chosen for i in cov) for cov in coverers):
            break

    uncovered = {j for j, cov in enumerate(coverers) if not any(i in chosen for i in cov)}
    while uncovered:
        best_i, best_key = -1, None
        for i in range(n):
            if i in chosen:
                continue
            gain = sum(1 for j in uncovered if i in coverers[j])
            if gain == 0:
                continue
            key = (reds[i].weight / gain, i)
            if best_key is None or key < best_key:
                best_i, best_key = i, key
        chosen.add(best_i)
        uncovered = {j for j in uncovered if best_i not in coverers[j]}

    counts = [sum(1 for i in cov if i in chosen) for cov in coverers]
    for i in sorted(chosen, key=lambda i: (-reds[i].weight, -i)):
        hits = [j for j, cov in enumerate(coverers) if i in cov]
        if all(counts[j] >= 2 for j in hits):
            chosen.discard(i)
            for j in hits:
                counts[j] -= 1
    return chosen


def solve_mwds(inst: CoverInstance, seed) -> CoverResult:
    """LP -> constituent reduction -> randomized rounding, end to end."""
    model = build_cover_lp(inst)
    if model.trivially_infeasible():
        return CoverResult("infeasible", (), math.inf)
    sol = solve_lp(model)
    if sol.status != "optimal":
        return CoverResult("infeasible", (), math.inf)
    reduced = reduce_instance(inst, sol)
    chosen = round_cover(inst.reds, reduced.blue_shapes, reduced.x_prime, seed)
    cost = sum(inst.reds[i].weight for i in chosen)
    return CoverResult("optimal", tuple(sorted(chosen)), cost, sol.objective)


def solve_mwsc(points, objects, seed) -> CoverResult:
    """Cover ground points by t-objects.

    Points are 1-objects already, so no constituent selection or scaling is
    needed; the LP optimum is rounded directly.
    """
    inst = CoverInstance("mwsc", max(len(o.parts) for o in objects), _shape_of(objects),
                         tuple(objects), points=tuple(points))
    model = build_cover_lp(inst)
    if model.trivially_infeasible():
        return CoverResult("infeasible", (), math.inf)
    sol = solve_lp(model)
    if sol.status != "optimal":
        return CoverResult("infeasible", (), math.inf)
    chosen = round_cover(inst.reds, inst.points, sol.values, seed)
    cost = sum(inst.reds[i].weight for i in chosen)
    return CoverResult("optimal", tuple(sorted(chosen)), cost, sol.objective)


def _shape_of(objects):
    from .geometry import shape_kind

    return shape_kind(objects[0].parts[0])


# ---------------------------------------------------------------------------
# exact solver for plain intervals

def preprocess_blue_intervals(blues) -> list:
    """Drop blues that strictly contain another blue; dedupe exact copies.

    Any red meeting a kept (inner) blue also meets the dropped (outer) one,
    so covers of the output and the input coincide.
    """
    return [blues[j] for j in _minimal_blue_indices(blues)]


def _minimal_blue_indices(blues):
    kept = []
    for j, b in enumerate(blues):
        redundant = False
        for k, c in enumerate(blues):
            if k == j:
                continue
            if b.lo <= c.lo and c.hi <= b.hi:
                if (b.lo, b.hi) != (c.lo, c.hi):
                    redundant = True  # b strictly contains c
                    break
                if k < j:
                    redundant = True  # duplicate: keep lowest index
                    break
        if not redundant:
            kept.append(j)
    return kept


def check_consecutive_ones(mat: IncidenceMatrix) -> bool:
    """True iff every column's ones occupy consecutive rows."""
    first, last, count = {}, {}, {}
    for j, row in enumerate(mat.rows):
        for i in row:
            if i not in first:
                first[i] = j
            last[i] = j
            count[i] = count.get(i, 0) + 1
    return all(last[i] - first[i] + 1 == count[i] for i in first)


def exact_interval_mwds(inst: CoverInstance) -> CoverResult:
    """Optimal dominating set for 1-interval reds and blues.

    After containment preprocessing and sorting by left endpoint each red
    covers a contiguous run of blues, so a prefix DP over runs is exact and
    matches the (integral) LP optimum.
    """
    if inst.shape != "interval" or inst.kind != "mwds":
        raise ValueError("exact solver requires an interval mwds instance")
    if any(len(o.parts) != 1 for o in inst.reds) or any(len(o.parts) != 1 for o in inst.blues):
        raise ValueError("exact solver requires t=1 on both sides")

    blue_ivs = [b.parts[0] for b in inst.blues]
    kept = _minimal_blue_indices(blue_ivs)
    order = sorted(kept, key=lambda j: (blue_ivs[j].lo, blue_ivs[j].hi))
    sorted_blues = [blue_ivs[j] for j in order]
    m = len(sorted_blues)
    if m == 0:
        return CoverResult("optimal", (), 0.0)

    runs = []
    for red in inst.reds:
        r = red.parts[0]
        hit = [j for j, b in enumerate(sorted_blues) if intersects(r, b)]
        if hit:
            runs.append((hit[0], hit[-1]))
        else:
            runs.append(None)

    INF = math.inf
    dp = [0.0] + [INF] * m
    parent = [None] * (m + 1)
    for j in range(1, m + 1):
        for i, run in enumerate(runs):
            if run is None:
                continue
            a, b = run
            if a <= j - 1 <= b and dp[a] + inst.reds[i].weight < dp[j]:
                dp[j] = dp[a] + inst.reds[i].weight
                parent[j] = (i, a)
    if dp[m] == INF:
        return CoverResult("infeasible", (), math.inf)

    chosen = set()
    j = m
    while j > 0:
        i, a = parent[j]
        chosen.add(i)
        j = a
    return CoverResult("optimal", tuple(sorted(chosen)), dp[m])
