"""Minimal exact presolve: fixed variables, empty rows, singleton rows,
empty columns, applied to a fixpoint, with a full primal postsolve.

Only reductions with trivially exact reversals are used; the point is an
honest linear-time "presolve" timing component, not a competitive reducer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from lpasympt.lp_core import INF, LpProblem, SparseMatrix

log = logging.getLogger(__name__)

MAX_PASSES = 10


class ProvenInfeasible(Exception):
    pass


class ProvenUnbounded(Exception):
    pass


@dataclass(frozen=True)
class _RestoreCols:
    """Columns removed in one step: positions in the space before removal."""

    positions: np.ndarray
    values: np.ndarray
    reason: str  # "fixed" or "empty_column"


@dataclass(frozen=True)
class _DropRows:
    count: int
    reason: str  # "empty" or "singleton"


@dataclass(frozen=True)
class _Tighten:
    """Bound tightening provenance from a singleton row (no postsolve action)."""

    col: int
    new_lower: float
    new_upper: float


@dataclass
class PostsolveStack:
    records: list = field(default_factory=list)
    objective_shift: float = 0.0
    n_original_cols: int = 0

    def restore(self, x_reduced: np.ndarray) -> np.ndarray:
        """Map a reduced-space point back to the original variable space."""
        x = np.asarray(x_reduced, dtype=np.float64)
        for rec in reversed(self.records):
            if isinstance(rec, _RestoreCols):
                full = np.empty(x.size + rec.positions.size)
                mask = np.ones(full.size, dtype=bool)
                mask[rec.positions] = False
                full[rec.positions] = rec.values
                full[mask] = x
                x = full
        if x.size != self.n_original_cols:
            raise ValueError(
                f"postsolve produced {x.size} variables, expected {self.n_original_cols}"
            )
        return x


def postsolve(x_reduced: np.ndarray, stack: PostsolveStack) -> np.ndarray:
    return stack.restore(x_reduced)


@dataclass
class PresolveResult:
    reduced: LpProblem
    stack: PostsolveStack
    passes: int
    rows_removed: int
    cols_removed: int


class _Work:
    """Mutable triplet-form problem used during the reduction passes."""

    def __init__(self, p: LpProblem):
        self.rows = p.matrix.row_of_entry().copy()
        self.cols = p.matrix.col_indices.copy()
        self.vals = p.matrix.values.copy()
        self.c = p.objective.copy()
        self.row_lo = p.row_lower.copy()
        self.row_hi = p.row_upper.copy()
        self.var_lo = p.var_lower.copy()
        self.var_hi = p.var_upper.copy()
        self.row_names = list(p.row_names) if p.row_names else None
        self.col_names = list(p.col_names) if p.col_names else None
        self.m = p.n_rows
        self.n = p.n_cols

    def drop_cols(self, positions: np.ndarray):
        keep = np.ones(self.n, dtype=bool)
        keep[positions] = False
        remap = np.cumsum(keep) - 1
        ent_keep = keep[self.cols]
        self.rows = self.rows[ent_keep]
        self.vals = self.vals[ent_keep]
        self.cols = remap[self.cols[ent_keep]]
        self.c = self.c[keep]
        self.var_lo = self.var_lo[keep]
        self.var_hi = self.var_hi[keep]
        if self.col_names:
            self.col_names = [nm for nm, k in zip(self.col_names, keep) if k]
        self.n -= positions.size

    def drop_rows(self, positions: np.ndarray):
        keep = np.ones(self.m, dtype=bool)
        keep[positions] = False
        remap = np.cumsum(keep) - 1
        ent_keep = keep[self.rows]
        self.cols = self.cols[ent_keep]
        self.vals = self.vals[ent_keep]
        self.rows = remap[self.rows[ent_keep]]
        self.row_lo = self.row_lo[keep]
        self.row_hi = self.row_hi[keep]
        if self.row_names:
            self.row_names = [nm for nm, k in zip(self.row_names, keep) if k]
        self.m -= positions.size

    def to_problem(self) -> LpProblem:
        matrix = SparseMatrix.from_coo(self.m, self.n, self.rows, self.cols, self.vals)
        return LpProblem(
            objective=self.c,
            matrix=matrix,
            row_lower=self.row_lo,
            row_upper=self.row_hi,
            var_lower=self.var_lo,
            var_upper=self.var_hi,
            row_names=self.row_names,
            col_names=self.col_names,
        )


def presolve(p: LpProblem, max_passes: int = MAX_PASSES) -> PresolveResult:
    """Reduce a problem to a fixpoint of the four safe reductions.

    Raises :class:`ProvenInfeasible` or :class:`ProvenUnbounded` when a
    reduction proves the corresponding status.
    """
    w = _Work(p)
    stack = PostsolveStack(n_original_cols=p.n_cols)
    stack.objective_shift = p.objective_constant
    rows_removed = cols_removed = 0
    passes = 0
    changed = True
    while changed and passes < max_passes:
        changed = False
        passes += 1

        # (a) fixed variables: substitute into row ranges and objective
        fixed = np.flatnonzero(w.var_lo == w.var_hi)
        if fixed.size:
            vals = w.var_lo[fixed]
            in_fixed = np.isin(w.cols, fixed)
            if in_fixed.any():
                col_pos = np.searchsorted(fixed, w.cols[in_fixed])
                contrib = w.vals[in_fixed] * vals[col_pos]
                shift = np.zeros(w.m)
                np.add.at(shift, w.rows[in_fixed], contrib)
                finite_lo = np.isfinite(w.row_lo)
                finite_hi = np.isfinite(w.row_hi)
                w.row_lo[finite_lo] -= shift[finite_lo]
                w.row_hi[finite_hi] -= shift[finite_hi]
            stack.objective_shift += float(w.c[fixed] @ vals)
            stack.records.append(_RestoreCols(fixed.copy(), vals.copy(), "fixed"))
            w.drop_cols(fixed)
            cols_removed += fixed.size
            changed = True

        row_counts = np.bincount(w.rows, minlength=w.m)

        # (b) empty rows: infeasible when 0 is outside the row range
        empty_rows = np.flatnonzero(row_counts == 0)
        if empty_rows.size:
            bad = (w.row_lo[empty_rows] > 0.0) | (w.row_hi[empty_rows] < 0.0)
            if bad.any():
                i = empty_rows[np.flatnonzero(bad)[0]]
                raise ProvenInfeasible(
                    f"empty row {i} requires 0 in [{w.row_lo[i]}, {w.row_hi[i]}]"
                )
            stack.records.append(_DropRows(int(empty_rows.size), "empty"))
            w.drop_rows(empty_rows)
            rows_removed += empty_rows.size
            changed = True
            row_counts = np.bincount(w.rows, minlength=w.m)

        # (c) singleton rows become variable-bound tightenings
        singleton = np.flatnonzero(row_counts == 1)
        if singleton.size:
            single_set = set(singleton.tolist())
            for k in range(w.rows.size):
                i = w.rows[k]
                if i not in single_set:
                    continue
                j, a = int(w.cols[k]), w.vals[k]
                lo, hi = w.row_lo[i], w.row_hi[i]
                if a > 0:
                    nl, nu = lo / a, hi / a
                else:
                    nl, nu = hi / a, lo / a
                new_lo = max(w.var_lo[j], nl)
                new_hi = min(w.var_hi[j], nu)
                if new_lo > new_hi:
                    raise ProvenInfeasible(
                        f"singleton row {i} tightens variable {j} to empty "
                        f"interval [{new_lo}, {new_hi}]"
                    )
                if new_lo != w.var_lo[j] or new_hi != w.var_hi[j]:
                    stack.records.append(_Tighten(j, new_lo, new_hi))
                w.var_lo[j] = new_lo
                w.var_hi[j] = new_hi
            stack.records.append(_DropRows(int(singleton.size), "singleton"))
            w.drop_rows(singleton)
            rows_removed += singleton.size
            changed = True

        # (d) empty columns go to the objective-favoured bound
        col_counts = np.bincount(w.cols, minlength=w.n)
        empty_cols = np.flatnonzero(col_counts == 0)
        if empty_cols.size:
            values = np.empty(empty_cols.size)
            for t, j in enumerate(empty_cols):
                cj = w.c[j]
                if cj > 0:
                    if w.var_lo[j] == -INF:
                        raise ProvenUnbounded(
                            f"empty column {j} with positive cost and no lower bound"
                        )
                    values[t] = w.var_lo[j]
                elif cj < 0:
                    if w.var_hi[j] == INF:
                        raise ProvenUnbounded(
                            f"empty column {j} with negative cost and no upper bound"
                        )
                    values[t] = w.var_hi[j]
                else:
                    if np.isfinite(w.var_lo[j]):
                        values[t] = w.var_lo[j]
                    elif np.isfinite(w.var_hi[j]):
                        values[t] = w.var_hi[j]
                    else:
                        values[t] = 0.0
            stack.objective_shift += float(w.c[empty_cols] @ values)
            stack.records.append(_RestoreCols(empty_cols.copy(), values, "empty_column"))
            w.drop_cols(empty_cols)
            cols_removed += empty_cols.size
            changed = True

    if changed:
        log.warning("presolve stopped at the %d-pass cap before reaching a fixpoint", max_passes)
    return PresolveResult(
        reduced=w.to_problem(),
        stack=stack,
        passes=passes,
        rows_removed=rows_removed,
        cols_removed=cols_removed,
    )
