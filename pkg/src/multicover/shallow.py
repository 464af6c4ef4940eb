"""Shallow-cell complexity counting on incidence matrices and the sampled
verification that splitting t-object columns into their constituents can
only increase shallow counts (with the depth budget scaled by t).

Counts follow the combinatorial definition exactly: distinct row patterns
restricted to a column subset, with between 1 and k ones. All-zero
restrictions are excluded; they belong to rows untouched by the subset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import intersects
from .instances import CoverInstance, IncidenceMatrix
from .covering import reduce_instance

__all__ = [
    "SccSample",
    "SccSamplePair",
    "SccReport",
    "shallow_row_count",
    "constituent_instance",
    "constituent_incidence",
    "reduced_incidence",
    "verify_scc_lemma",
    "trend_fit",
]


@dataclass(frozen=True)
class SccSample:
    columns: tuple         # column subset S
    n: int                 # |S|
    k: int                 # depth threshold
    shallow_count: int


@dataclass(frozen=True)
class SccSamplePair:
    tobject: SccSample         # count on the t-object instance at depth k
    constituent: SccSample     # count on the split instance at depth k*t
    witness: tuple             # (representative row, ones in its split pattern)


@dataclass(frozen=True)
class SccReport:
    violations: tuple
    samples: tuple             # SccSamplePair entries

    def csv_rows(self):
        """(n, k, g_count, f_count) per sample."""
        return [
            (p.tobject.n, p.tobject.k, p.tobject.shallow_count, p.constituent.shallow_count)
            for p in self.samples
        ]


def shallow_row_count(mat: IncidenceMatrix, columns, k: int) -> int:
    """Distinct row patterns restricted to `columns` with 1..k ones."""
    cols = frozenset(columns)
    if not 1 <= k <= len(cols):
        raise ValueError(f"need 1 <= k <= |S|, got k={k}, |S|={len(cols)}")
    patterns = set()
    for row in mat.rows:
        restricted = frozenset(i for i in row if i in cols)
        if 1 <= len(restricted) <= k:
            patterns.add(restricted)
    return len(patterns)


def constituent_instance(reds):
    """Split t-object reds into their parts as standalone unit columns.

    Returns (part shapes, parent red index per part). The blue side of the
    instance passes through unchanged.
    """
    parts, parents = [], []
    for i, red in enumerate(reds):
        for shape in red.parts:
            parts.append(shape)
            parents.append(i)
    return parts, parents


def reduced_incidence(reds, blue_shapes) -> IncidenceMatrix:
    """Incidence of 1-object blues against t-object reds."""
    rows = tuple(
        tuple(i for i, red in enumerate(reds) if any(intersects(b, p) for p in red.parts))
        for b in blue_shapes
    )
    return IncidenceMatrix(len(blue_shapes), len(reds), rows)


def constituent_incidence(reds, blue_shapes):
    """Incidence of 1-object blues against the split part columns."""
    parts, parents = constituent_instance(reds)
    rows = tuple(
        tuple(c for c, shape in enumerate(parts) if intersects(b, shape))
        for b in blue_shapes
    )
    return IncidenceMatrix(len(blue_shapes), len(parts), rows), parents


def verify_scc_lemma(inst: CoverInstance, x, trials: int, seed) -> SccReport:
    """Sampled check that splitting columns never shrinks shallow counts.

    For each sampled (S, k): the count over t-object columns S at depth k
    must not exceed the count over S's constituent columns at depth k*t.
    Each shallow row is mapped to its split pattern as an explicit witness;
    the mapping must be injective with pattern sizes in [1, k*t]. Any
    failure is a violation (these indicate an implementation bug, never
    sampling noise).
    """
    reduced = reduce_instance(inst, x)
    blue_shapes = reduced.blue_shapes
    mat_t = reduced_incidence(inst.reds, blue_shapes)
    mat_c, parents = constituent_incidence(inst.reds, blue_shapes)
    part_cols_of = [[] for _ in inst.reds]
    for c, parent in enumerate(parents):
        part_cols_of[parent].append(c)

    n_reds = len(inst.reds)
    rng = np.random.default_rng(seed)
    samples, violations = [], []
    hi = min(n_reds, 24)
    for _ in range(trials):
        if n_reds < 2:
            break
        size = int(rng.integers(2, hi + 1))
        cols = tuple(sorted(int(c) for c in rng.choice(n_reds, size=size, replace=False)))
        k = int(rng.integers(1, size + 1))
        split_cols = tuple(sorted(c for i in cols for c in part_cols_of[i]))
        g = shallow_row_count(mat_t, cols, k)
        f = shallow_row_count(mat_c, split_cols, k * inst.t)

        witness, seen = [], {}
        col_set = frozenset(cols)
        split_set = frozenset(split_cols)
        for j, row in enumerate(mat_t.rows):
            pattern = frozenset(i for i in row if i in col_set)
            if not 1 <= len(pattern) <= k or pattern in seen:
                continue
            seen[pattern] = j
            split_pattern = frozenset(c for c in mat_c.rows[j] if c in split_set)
            witness.append((j, len(split_pattern)))
            if not 1 <= len(split_pattern) <= k * inst.t:
                violations.append(
                    f"S={cols} k={k}: row {j} split pattern has {len(split_pattern)} ones"
                )
        split_patterns = {
            frozenset(c for c in mat_c.rows[j] if c in split_set) for j in seen.values()
        }
        if len(split_patterns) != len(seen):
            violations.append(f"S={cols} k={k}: split row mapping not injective")
        if g > f:
            violations.append(f"S={cols} k={k}: shallow count {g} exceeds split count {f}")
        samples.append(
            SccSamplePair(
                SccSample(cols, len(cols), k, g),
                SccSample(split_cols, len(split_cols), k * inst.t, f),
                tuple(witness),
            )
        )
    return SccReport(tuple(violations), tuple(samples))


def trend_fit(points):
    """Least-squares slope of log(count/n) against log(k).

    `points` holds (n, k, count) triples; zero counts are skipped. Returns
    (slope, intercept, used) with slope 0.0 when fewer than two distinct k
    values survive.
    """
    xs, ys = [], []
    for n, k, count in points:
        if count <= 0 or n <= 0:
            continue
        xs.append(np.log(float(k)))
        ys.append(np.log(count / float(n)))
    if len(set(xs)) < 2:
        return 0.0, 0.0, len(xs)
    slope, intercept = np.polyfit(np.asarray(xs), np.asarray(ys), 1)
    return float(slope), float(intercept), len(xs)
