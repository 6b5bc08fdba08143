"""Desk-scale dense primal simplex oracle with Bland's rule.

Two-phase full-tableau simplex on the equality standard form.  Optimized for
provable correctness on small instances (test oracle duty), not speed: the
size cap rejects anything above 2000 standard-form variables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from lpasympt.lp_core import LpProblem, PrimalDualIterate, StandardLp, to_standard_form

SIZE_CAP = 2000
_TOL = 1e-9


class SimplexStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    PIVOT_LIMIT = "PivotLimit"


class SizeCapExceeded(ValueError):
    pass


@dataclass
class SimplexResult:
    status: SimplexStatus
    x: np.ndarray | None          # original variable space
    y: np.ndarray | None          # duals of the original rows
    z: np.ndarray | None          # reduced costs in the original space
    objective: float | None       # original-space objective (incl. constant)
    basis: list[int] | None       # standard-form basic column indices
    pivots: int
    std: StandardLp | None
    std_iterate: PrimalDualIterate | None


def _bland_pivot(T, b, cost_row, basis, allowed, pivot_budget):
    """Run Bland-rule pivots to optimality/unboundedness; mutates T, b, basis."""
    m = T.shape[0]
    pivots = 0
    while True:
        rc = cost_row - cost_row[basis] @ T
        entering = -1
        for j in np.flatnonzero(rc < -_TOL):
            if allowed[j]:
                entering = int(j)
                break
        if entering < 0:
            return "optimal", pivots
        col = T[:, entering]
        pos = col > _TOL
        if not pos.any():
            return "unbounded", pivots
        ratios = np.full(m, np.inf)
        ratios[pos] = b[pos] / col[pos]
        best = ratios.min()
        tie_rows = np.flatnonzero(ratios <= best + _TOL * (1.0 + abs(best)))
        leave_row = int(min(tie_rows, key=lambda i: basis[i]))
        piv = T[leave_row, entering]
        T[leave_row] /= piv
        b[leave_row] /= piv
        other = np.arange(m) != leave_row
        factor = T[other, entering][:, None]
        T[other] -= factor * T[leave_row]
        b[other] -= factor[:, 0] * b[leave_row]
        np.maximum(b, 0.0, out=b, where=b > -_TOL)
        basis[leave_row] = entering
        pivots += 1
        if pivots >= pivot_budget:
            return "pivot_limit", pivots


def solve_dense_simplex(p: LpProblem, pivot_limit: int | None = None) -> SimplexResult:
    """Primal simplex with Bland's rule; phase 1 via artificial variables."""
    std = to_standard_form(p)
    n, m = std.n_cols, std.n_rows
    if n > SIZE_CAP:
        raise SizeCapExceeded(
            f"{n} standard-form variables exceed the oracle cap of {SIZE_CAP}"
        )
    if pivot_limit is None:
        pivot_limit = 50 * (m + n) + 1000

    if m == 0:
        if np.any(std.objective < 0):
            return SimplexResult(
                SimplexStatus.UNBOUNDED, None, None, None, None, None, 0, std, None
            )
        return _finish(p, std, np.zeros(n), np.zeros(0), [], 0)

    row_sign = np.where(std.rhs < 0, -1.0, 1.0)
    A_signed = std.matrix.to_dense() * row_sign[:, None]
    b_signed = std.rhs * row_sign

    # phase 1: minimize the artificial sum
    T = np.hstack([A_signed, np.eye(m)])
    bb = b_signed.copy()
    basis = list(range(n, n + m))
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    allowed = np.ones(n + m, dtype=bool)
    outcome, piv1 = _bland_pivot(T, bb, cost1, basis, allowed, pivot_limit)
    if outcome == "pivot_limit":
        return SimplexResult(
            SimplexStatus.PIVOT_LIMIT, None, None, None, None, None, piv1, std, None
        )
    phase1_obj = float(cost1[basis] @ bb)
    if phase1_obj > _TOL * (1.0 + float(np.abs(b_signed).sum())):
        return SimplexResult(
            SimplexStatus.INFEASIBLE, None, None, None, None, None, piv1, std, None
        )

    # drive artificials out of the basis; rows where that fails are linearly
    # dependent and get dropped
    kept_rows = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n:
            pivot_col = -1
            for j in range(n):
                if abs(T[i, j]) > 1e-7:
                    pivot_col = j
                    break
            if pivot_col < 0:
                kept_rows[i] = False
                continue
            piv = T[i, pivot_col]
            T[i] /= piv
            bb[i] /= piv
            other = np.arange(m) != i
            factor = T[other, pivot_col][:, None]
            T[other] -= factor * T[i]
            bb[other] -= factor[:, 0] * bb[i]
            basis[i] = pivot_col
    if not kept_rows.all():
        T = T[kept_rows]
        bb = bb[kept_rows]
        basis = [bas for bas, k in zip(basis, kept_rows) if k]

    # phase 2 on the real objective; artificial columns may not re-enter
    cost2 = np.concatenate([std.objective, np.zeros(T.shape[1] - n)])
    allowed = np.concatenate(
        [np.ones(n, dtype=bool), np.zeros(T.shape[1] - n, dtype=bool)]
    )
    outcome, piv2 = _bland_pivot(T, bb, cost2, basis, allowed, pivot_limit - piv1)
    pivots = piv1 + piv2
    if outcome == "pivot_limit":
        return SimplexResult(
            SimplexStatus.PIVOT_LIMIT, None, None, None, None, None, pivots, std, None
        )
    if outcome == "unbounded":
        return SimplexResult(
            SimplexStatus.UNBOUNDED, None, None, None, None, None, pivots, std, None
        )

    x_std = np.zeros(T.shape[1])
    x_std[basis] = bb
    x_std = x_std[:n]

    # clean recompute from the final basis on the kept subsystem: x_B solves
    # A_B x = b; duals solve A_B^T y = c_B; dropped redundant rows get dual 0
    A_kept = A_signed[kept_rows][:, :]
    b_kept = b_signed[kept_rows]
    sign_kept = row_sign[kept_rows]
    y_full = np.zeros(m)
    try:
        B = A_kept[:, basis]
        xb = np.linalg.solve(B, b_kept)
        if np.all(xb >= -1e-7):
            x_clean = np.zeros(n)
            x_clean[basis] = np.maximum(xb, 0.0)
            x_std = x_clean
        y_kept = np.linalg.solve(B.T, std.objective[basis]) * sign_kept
        y_full[kept_rows] = y_kept
    except np.linalg.LinAlgError:
        pass
    return _finish(p, std, x_std, y_full, basis, pivots)


def _finish(p, std, x_std, y_std, basis, pivots):
    n = std.n_cols
    z_std = std.objective - (std.matrix.to_dense().T @ y_std if std.n_rows else 0.0)
    it = PrimalDualIterate(x_std, y_std, np.asarray(z_std, dtype=np.float64).reshape(n))
    x_orig = std.mapping.restore(x_std)
    y_orig = np.zeros(p.n_rows)
    kept = std.mapping.row_std >= 0
    y_orig[kept] = y_std[std.mapping.row_std[kept]]
    if p.n_cols:
        z_orig = p.objective - p.matrix.to_dense().T @ y_orig
    else:
        z_orig = np.zeros(0)
    objective = p.objective_value(x_orig)
    return SimplexResult(
        SimplexStatus.OPTIMAL, x_orig, y_orig, z_orig, objective, list(basis), pivots, std, it
    )
