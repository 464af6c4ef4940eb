"""Linear programs over object-selection variables and a self-contained
dense simplex solver.

Two model builders are provided: the covering LP (minimize total weight
subject to every blue/point being fractionally covered at least once) and
the packing LP (maximize total weight subject to per-point capacity). All
variables live in [0, 1]; upper bounds are materialized as explicit rows so
the solver core only deals with x >= 0.

The solver is a two-phase tableau simplex. Pricing is Dantzig (most
negative reduced cost, lowest index on ties) and switches permanently to
Bland's rule after BLAND_AFTER pivots, which guarantees termination.
Everything is deterministic for a fixed model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import contains_point, t_intersects
from .instances import CoverInstance, PackInstance, incidence

FEAS_TOL = 1e-7    # constraint residual accepted as satisfied
OPT_TOL = 1e-8     # reduced-cost threshold for optimality
PIVOT_TOL = 1e-9
BLAND_AFTER = 2000
MAX_ITERS = 50000


class IterationLimitError(RuntimeError):
    pass


class SolverError(RuntimeError):
    """Solution failed the post-solve residual check."""


@dataclass(frozen=True)
class LpRow:
    coeffs: tuple      # ((var index, coefficient), ...)
    relation: str      # ">=" | "<="
    rhs: float


@dataclass(frozen=True)
class LpModel:
    sense: str         # "min" | "max"
    objective: tuple   # coefficient per variable
    rows: tuple        # LpRow, variable bounds [0, 1] are implicit
    num_vars: int

    def trivially_infeasible(self) -> bool:
        """A coverage row with no incident variable can never be met."""
        for row in self.rows:
            if not row.coeffs and row.relation == ">=" and row.rhs > FEAS_TOL:
                return True
        return False


@dataclass(frozen=True)
class LpSolution:
    status: str        # "optimal" | "infeasible"
    values: tuple
    objective: float


def build_cover_lp(inst: CoverInstance) -> LpModel:
    """min sum w_i x_i  s.t.  sum over incident reds x_i >= 1 per blue/point."""
    mat = incidence(inst)
    rows = tuple(
        LpRow(tuple((i, 1.0) for i in cols), ">=", 1.0) for cols in mat.rows
    )
    return LpModel("min", tuple(o.weight for o in inst.reds), rows, len(inst.reds))


def build_packing_lp(inst: PackInstance) -> LpModel:
    """max sum w_i x_i  s.t.  sum over objects containing p x_i <= c(p)."""
    rows = []
    for p, cap in zip(inst.points, inst.capacities):
        cols = tuple(i for i, obj in enumerate(inst.objects) if contains_point(obj, p))
        rows.append(LpRow(tuple((i, 1.0) for i in cols), "<=", float(cap)))
    return LpModel(
        "max", tuple(o.weight for o in inst.objects), tuple(rows), len(inst.objects)
    )


def _merge_duplicate_rows(rows):
    """Presolve: rows with identical coefficients collapse to the tightest rhs."""
    best = {}
    order = []
    for row in rows:
        key = (row.relation, tuple(sorted(row.coeffs)))
        if key not in best:
            best[key] = row.rhs
            order.append(key)
        elif row.relation == "<=":
            best[key] = min(best[key], row.rhs)
        else:
            best[key] = max(best[key], row.rhs)
    return [LpRow(key[1], key[0], best[key]) for key in order]


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    piv_row = T[row]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, piv_row)
    basis[row] = col


def _run_simplex(T, basis, cost, iters_used):
    """Optimize tableau T (columns: vars..., rhs) in place. Returns pivot count."""
    ncols = T.shape[1] - 1
    it = iters_used
    while True:
        if it >= MAX_ITERS:
            raise IterationLimitError("iteration limit")
        cb = cost[basis]
        reduced = cost[:ncols] - cb @ T[:, :ncols]
        reduced[basis] = 0.0
        if it >= BLAND_AFTER:
            candidates = np.flatnonzero(reduced < -OPT_TOL)
            if candidates.size == 0:
                return it
            entering = int(candidates[0])
        else:
            entering = int(np.argmin(reduced))
            if reduced[entering] >= -OPT_TOL:
                return it
        col = T[:, entering]
        eligible = np.flatnonzero(col > PIVOT_TOL)
        if eligible.size == 0:
            # [0,1] boxes make our models bounded; reaching here means bad input
            raise SolverError("unbounded direction in a box-constrained model")
        ratios = T[eligible, -1] / col[eligible]
        best = ratios.min()
        tied = eligible[ratios <= best + PIVOT_TOL]
        leaving = int(tied[np.argmin(np.asarray(basis)[tied])])
        _pivot(T, basis, leaving, entering)
        it += 1


def solve_lp(model: LpModel) -> LpSolution:
    """Solve a model to proven optimality or report infeasibility."""
    n = model.num_vars
    sign = 1.0 if model.sense == "min" else -1.0
    obj = sign * np.asarray(model.objective, dtype=float)
    if not np.all(np.isfinite(obj)):
        raise ValueError("objective coefficients must be finite")

    rows = list(_merge_duplicate_rows(model.rows))
    rows.extend(LpRow(((j, 1.0),), "<=", 1.0) for j in range(n))
    m = len(rows)

    # equality form: one slack (<=) or surplus (>=) per row, rhs >= 0
    A = np.zeros((m, n + m))
    b = np.zeros(m)
    for i, row in enumerate(rows):
        if not np.isfinite(row.rhs):
            raise ValueError("rhs must be finite")
        for j, a in row.coeffs:
            A[i, j] += a
        A[i, n + i] = 1.0 if row.relation == "<=" else -1.0
        b[i] = row.rhs
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    basis = []
    needs_artificial = []
    for i in range(m):
        if A[i, n + i] > 0:
            basis.append(n + i)
        else:
            needs_artificial.append(i)

    iters = 0
    if needs_artificial:
        n_art = len(needs_artificial)
        A1 = np.hstack([A, np.zeros((m, n_art))])
        for k, i in enumerate(needs_artificial):
            A1[i, n + m + k] = 1.0
        basis1 = []
        next_art = n + m
        for i in range(m):
            if A[i, n + i] > 0:
                basis1.append(n + i)
            else:
                basis1.append(next_art)
                next_art += 1
        cost1 = np.zeros(n + m + n_art + 1)
        cost1[n + m : n + m + n_art] = 1.0
        T = np.hstack([A1, b.reshape(-1, 1)])
        iters = _run_simplex(T, basis1, cost1, iters)
        phase1_obj = float(cost1[basis1] @ T[:, -1])
        if phase1_obj > FEAS_TOL:
            return LpSolution("infeasible", (0.0,) * n, 0.0)
        # drive leftover artificials out of the basis
        drop_rows = []
        for r in range(m):
            if basis1[r] >= n + m:
                pivot_col = -1
                for j in range(n + m):
                    if abs(T[r, j]) > PIVOT_TOL:
                        pivot_col = j
                        break
                if pivot_col >= 0:
                    _pivot(T, basis1, r, pivot_col)
                else:
                    drop_rows.append(r)  # redundant constraint
        if drop_rows:
            keep = [r for r in range(m) if r not in set(drop_rows)]
            T = T[keep]
            basis1 = [basis1[r] for r in keep]
        T = np.hstack([T[:, : n + m], T[:, -1:]])
        basis = basis1
    else:
        T = np.hstack([A, b.reshape(-1, 1)])

    cost = np.zeros(n + m + 1)
    cost[:n] = obj
    iters = _run_simplex(T, basis, cost, iters)

    x = np.zeros(n)
    for r, col in enumerate(basis):
        if col < n:
            x[col] = T[r, -1]
    x = np.clip(x, 0.0, 1.0)

    _check_residuals(model, x)
    value = float(np.asarray(model.objective) @ x)
    return LpSolution("optimal", tuple(float(v) for v in x), value)


def _check_residuals(model: LpModel, x) -> None:
    for row in model.rows:
        lhs = sum(a * x[j] for j, a in row.coeffs)
        if row.relation == ">=" and lhs < row.rhs - FEAS_TOL:
            raise SolverError(f"row residual {row.rhs - lhs:.3e} exceeds tolerance")
        if row.relation == "<=" and lhs > row.rhs + FEAS_TOL:
            raise SolverError(f"row residual {lhs - row.rhs:.3e} exceeds tolerance")
