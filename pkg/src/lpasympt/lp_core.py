"""Core LP data model: sparse matrix, problem containers, residuals, termination.

The public problem form is the generalized bounded LP

    min c.x   s.t.   L <= A x <= U,   l <= x <= u

with +/-inf allowed in L, U, l, u.  The equality form ``A x = b, x >= 0``
used by residual bookkeeping and the dense simplex oracle is produced by
:func:`to_standard_form`, which records an invertible mapping back to the
original space.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

log = logging.getLogger(__name__)

INF = float("inf")


class ContractViolation(ValueError):
    """Raised when an operation is called with dimensionally inconsistent data."""


class StandardFormError(ValueError):
    """Raised when a problem cannot be converted to equality standard form."""


def _as_float_array(x, name):
    a = np.ascontiguousarray(x, dtype=np.float64)
    if np.isnan(a).any():
        raise ValueError(f"{name} contains NaN")
    return a


def _as_index_array(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def _freeze(*arrays):
    for a in arrays:
        a.flags.writeable = False


@dataclass(eq=False)
class SparseMatrix:
    """Compressed-row sparse matrix with strictly sorted, zero-free rows."""

    n_rows: int
    n_cols: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray
    _csr: sp.csr_matrix | None = field(default=None, repr=False, compare=False)
    _csr_t: sp.csr_matrix | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.row_offsets = _as_index_array(self.row_offsets)
        self.col_indices = _as_index_array(self.col_indices)
        self.values = _as_float_array(self.values, "matrix values")
        off, cols, vals = self.row_offsets, self.col_indices, self.values
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("negative matrix dimension")
        if off.shape != (self.n_rows + 1,):
            raise ValueError("row_offsets must have length n_rows+1")
        if off[0] != 0 or off[-1] != cols.size or np.any(np.diff(off) < 0):
            raise ValueError("row_offsets must be nondecreasing from 0 to nnz")
        if cols.size != vals.size:
            raise ValueError("col_indices and values must have equal length")
        if cols.size:
            if cols.min() < 0 or cols.max() >= self.n_cols:
                raise ValueError("column index out of range")
            # strictly increasing within each row
            same_row = np.repeat(np.arange(self.n_rows), np.diff(off))
            interior = np.flatnonzero(np.diff(same_row) == 0)
            if np.any(cols[interior + 1] <= cols[interior]):
                raise ValueError("col_indices must be strictly increasing within rows")
            if np.any(vals == 0.0):
                raise ValueError("explicit zeros are not stored")
            if not np.isfinite(vals).all():
                raise ValueError("matrix values must be finite")
        _freeze(self.row_offsets, self.col_indices, self.values)

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_coo(cls, n_rows, n_cols, rows, cols, vals) -> "SparseMatrix":
        """Build from triplets; duplicates are summed, exact zeros dropped."""
        rows = _as_index_array(rows)
        cols = _as_index_array(cols)
        vals = _as_float_array(vals, "matrix values")
        if not (rows.size == cols.size == vals.size):
            raise ValueError("triplet arrays must have equal length")
        if rows.size:
            order = np.lexsort((cols, rows))
            rows, cols, vals = rows[order], cols[order], vals[order]
            key_change = np.empty(rows.size, dtype=bool)
            key_change[0] = True
            key_change[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            group = np.cumsum(key_change) - 1
            summed = np.zeros(group[-1] + 1)
            np.add.at(summed, group, vals)
            rows, cols = rows[key_change], cols[key_change]
            keep = summed != 0.0
            rows, cols, vals = rows[keep], cols[keep], summed[keep]
        offsets = np.zeros(n_rows + 1, dtype=np.int64)
        if rows.size:
            np.add.at(offsets, rows + 1, 1)
        np.cumsum(offsets, out=offsets)
        return cls(n_rows, n_cols, offsets, cols, vals)

    @classmethod
    def from_dense(cls, dense) -> "SparseMatrix":
        dense = np.asarray(dense, dtype=np.float64)
        rows, cols = np.nonzero(dense)
        return cls.from_coo(dense.shape[0], dense.shape[1], rows, cols, dense[rows, cols])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols))
        row_of = np.repeat(np.arange(self.n_rows), np.diff(self.row_offsets))
        out[row_of, self.col_indices] = self.values
        return out

    def scipy_csr(self) -> sp.csr_matrix:
        if self._csr is None:
            m = sp.csr_matrix(
                (self.values, self.col_indices, self.row_offsets),
                shape=(self.n_rows, self.n_cols),
                copy=False,
            )
            m.has_sorted_indices = True
            self._csr = m
        return self._csr

    def scipy_csr_t(self) -> sp.csr_matrix:
        if self._csr_t is None:
            self._csr_t = self.scipy_csr().T.tocsr()
        return self._csr_t

    def row_of_entry(self) -> np.ndarray:
        """Row index of each stored entry, in storage order."""
        return np.repeat(np.arange(self.n_rows), np.diff(self.row_offsets))


def matvec(A: SparseMatrix, v: np.ndarray) -> np.ndarray:
    """A @ v with deterministic row-major accumulation."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (A.n_cols,):
        raise ContractViolation(f"matvec: expected length {A.n_cols}, got {v.shape}")
    if A.nnz == 0:
        return np.zeros(A.n_rows)
    return A.scipy_csr() @ v


def matvec_transpose(A: SparseMatrix, v: np.ndarray) -> np.ndarray:
    """A.T @ v, computed row-major on the cached transpose."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (A.n_rows,):
        raise ContractViolation(f"matvec_transpose: expected length {A.n_rows}, got {v.shape}")
    if A.nnz == 0:
        return np.zeros(A.n_cols)
    return A.scipy_csr_t() @ v


@dataclass(eq=False)
class LpProblem:
    """Generalized bounded LP (minimization), L <= Ax <= U, l <= x <= u."""

    objective: np.ndarray
    matrix: SparseMatrix
    row_lower: np.ndarray
    row_upper: np.ndarray
    var_lower: np.ndarray
    var_upper: np.ndarray
    row_names: list[str] | None = None
    col_names: list[str] | None = None
    objective_constant: float = 0.0

    def __post_init__(self):
        m, n = self.matrix.n_rows, self.matrix.n_cols
        self.objective = _as_float_array(self.objective, "objective")
        self.row_lower = _as_float_array(self.row_lower, "row_lower")
        self.row_upper = _as_float_array(self.row_upper, "row_upper")
        self.var_lower = _as_float_array(self.var_lower, "var_lower")
        self.var_upper = _as_float_array(self.var_upper, "var_upper")
        if self.objective.shape != (n,):
            raise ValueError("objective length must match matrix columns")
        if self.row_lower.shape != (m,) or self.row_upper.shape != (m,):
            raise ValueError("row bound lengths must match matrix rows")
        if self.var_lower.shape != (n,) or self.var_upper.shape != (n,):
            raise ValueError("variable bound lengths must match matrix columns")
        if not np.isfinite(self.objective).all():
            raise ValueError("objective must be finite")
        if math.isnan(self.objective_constant) or math.isinf(self.objective_constant):
            raise ValueError("objective constant must be finite")
        if np.any(self.row_lower > self.row_upper):
            raise ValueError("row_lower must not exceed row_upper")
        if np.any(self.var_lower > self.var_upper):
            raise ValueError("var_lower must not exceed var_upper")
        if np.any(self.row_lower == INF) or np.any(self.row_upper == -INF):
            raise ValueError("row bounds may not pin a row at +/-infinity")
        if np.any(self.var_lower == INF) or np.any(self.var_upper == -INF):
            raise ValueError("variable bounds may not pin a variable at +/-infinity")
        if self.row_names is not None and len(self.row_names) != m:
            raise ValueError("row_names length mismatch")
        if self.col_names is not None and len(self.col_names) != n:
            raise ValueError("col_names length mismatch")
        _freeze(self.objective, self.row_lower, self.row_upper, self.var_lower, self.var_upper)

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols

    def objective_value(self, x: np.ndarray) -> float:
        return float(self.objective @ np.asarray(x, dtype=np.float64)) + self.objective_constant

    def row_activity(self, x: np.ndarray) -> np.ndarray:
        return matvec(self.matrix, x)

    def max_violation(self, x: np.ndarray) -> float:
        """Largest constraint-range or variable-bound violation of x."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n_cols,):
            raise ContractViolation("point length mismatch")
        act = self.row_activity(x)
        worst = 0.0
        if act.size:
            lo = np.where(np.isfinite(self.row_lower), self.row_lower - act, -INF)
            hi = np.where(np.isfinite(self.row_upper), act - self.row_upper, -INF)
            worst = max(worst, float(lo.max(initial=0.0)), float(hi.max(initial=0.0)))
        if x.size:
            lo = np.where(np.isfinite(self.var_lower), self.var_lower - x, -INF)
            hi = np.where(np.isfinite(self.var_upper), x - self.var_upper, -INF)
            worst = max(worst, float(lo.max(initial=0.0)), float(hi.max(initial=0.0)))
        return worst


# variable transform modes used by the standard-form mapping
_SHIFT, _MIRROR, _SPLIT = 0, 1, 2
# row kinds
_ROW_EQ, _ROW_GE, _ROW_LE, _ROW_RANGE, _ROW_FREE = 0, 1, 2, 3, 4


@dataclass(eq=False)
class StandardFormMap:
    """Invertible record of the transform applied by :func:`to_standard_form`."""

    source: LpProblem
    var_mode: np.ndarray        # per original column: _SHIFT/_MIRROR/_SPLIT
    var_col: np.ndarray         # std column of the (first) transformed part
    var_col2: np.ndarray        # std column of the negative split part, else -1
    var_anchor: np.ndarray      # shift amount l_j (SHIFT) or mirror anchor u_j (MIRROR)
    row_kind: np.ndarray        # per original row
    row_std: np.ndarray         # std row index, -1 for dropped free rows
    row_slack_col: np.ndarray   # std column of the row slack, -1 if none
    bound_col: np.ndarray       # std columns carrying an explicit upper-bound row
    bound_ub: np.ndarray        # their upper bounds in std space
    bound_slack_col: np.ndarray
    bound_row: np.ndarray
    n_std_rows: int
    n_std_cols: int
    objective_constant: float

    def restore(self, x_std: np.ndarray) -> np.ndarray:
        """Map a standard-form point back to original variables."""
        x_std = np.asarray(x_std, dtype=np.float64)
        if x_std.shape != (self.n_std_cols,):
            raise ContractViolation("standard-form point length mismatch")
        x = np.empty(self.source.n_cols)
        shift = self.var_mode == _SHIFT
        mirror = self.var_mode == _MIRROR
        split = self.var_mode == _SPLIT
        x[shift] = x_std[self.var_col[shift]] + self.var_anchor[shift]
        x[mirror] = self.var_anchor[mirror] - x_std[self.var_col[mirror]]
        x[split] = x_std[self.var_col[split]] - x_std[self.var_col2[split]]
        return x

    def embed_point(self, x: np.ndarray) -> np.ndarray:
        """Embed an original-space point, computing slack values.

        Slacks are clipped to their own bounds, so any range violation of x
        surfaces in the standard-form primal residual rather than hiding in
        an out-of-bounds slack.
        """
        p = self.source
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (p.n_cols,):
            raise ContractViolation("point length mismatch")
        out = np.zeros(self.n_std_cols)
        shift = self.var_mode == _SHIFT
        mirror = self.var_mode == _MIRROR
        split = self.var_mode == _SPLIT
        out[self.var_col[shift]] = np.maximum(x[shift] - self.var_anchor[shift], 0.0)
        out[self.var_col[mirror]] = np.maximum(self.var_anchor[mirror] - x[mirror], 0.0)
        out[self.var_col[split]] = np.maximum(x[split], 0.0)
        out[self.var_col2[split]] = np.maximum(-x[split], 0.0)
        act = p.row_activity(x)
        ge = self.row_kind == _ROW_GE
        out[self.row_slack_col[ge]] = np.maximum(act[ge] - p.row_lower[ge], 0.0)
        le = self.row_kind == _ROW_LE
        out[self.row_slack_col[le]] = np.maximum(p.row_upper[le] - act[le], 0.0)
        rng = self.row_kind == _ROW_RANGE
        out[self.row_slack_col[rng]] = np.clip(
            p.row_upper[rng] - act[rng], 0.0, p.row_upper[rng] - p.row_lower[rng]
        )
        if self.bound_col.size:
            out[self.bound_slack_col] = np.maximum(self.bound_ub - out[self.bound_col], 0.0)
        return out

    def iterate_from_bounded(
        self, std: "StandardLp", x: np.ndarray, y: np.ndarray
    ) -> "PrimalDualIterate":
        """Embed a bounded-form (x, y) pair as a full standard-form iterate.

        Reduced costs are absorbed into finite bounds wherever legal: columns
        with an explicit upper-bound row get that row's dual set to the
        negative part of their reduced cost, and z keeps the positive part.
        Any remaining negative reduced cost is honest dual infeasibility.
        """
        y = np.asarray(y, dtype=np.float64)
        if y.shape != (self.source.n_rows,):
            raise ContractViolation("dual length mismatch")
        x_std = self.embed_point(x)
        y_std = np.zeros(self.n_std_rows)
        kept = self.row_std >= 0
        y_std[self.row_std[kept]] = y[kept]
        r = std.objective - matvec_transpose(std.matrix, y_std)
        if self.bound_col.size:
            w = np.minimum(r[self.bound_col], 0.0)
            y_std[self.bound_row] = w
            r = r.copy()
            r[self.bound_col] -= w
            r[self.bound_slack_col] -= w
        z = np.maximum(r, 0.0)
        return PrimalDualIterate(x_std, y_std, z)


@dataclass(eq=False)
class StandardLp:
    """Equality-form LP: min c.x s.t. Ax = b, x >= 0."""

    matrix: SparseMatrix
    rhs: np.ndarray
    objective: np.ndarray
    mapping: StandardFormMap

    def __post_init__(self):
        self.rhs = _as_float_array(self.rhs, "rhs")
        self.objective = _as_float_array(self.objective, "objective")
        if self.rhs.shape != (self.matrix.n_rows,):
            raise ValueError("rhs length mismatch")
        if self.objective.shape != (self.matrix.n_cols,):
            raise ValueError("objective length mismatch")
        _freeze(self.rhs, self.objective)

    @property
    def n_rows(self) -> int:
        return self.matrix.n_rows

    @property
    def n_cols(self) -> int:
        return self.matrix.n_cols


def to_standard_form(p: LpProblem, drop_free_rows: bool = False) -> StandardLp:
    """Convert to equality form with nonnegative variables.

    Variables with a finite lower bound are shifted to zero; upper-bounded
    free-below variables are mirrored; doubly free variables are split.
    Finite upper bounds (including range-row slacks) become explicit bound
    rows so the result is a plain ``Ax = b, x >= 0`` system.
    """
    m, n = p.n_rows, p.n_cols
    lo, up = p.var_lower, p.var_upper
    var_mode = np.empty(n, dtype=np.int64)
    var_anchor = np.zeros(n)
    var_mode[np.isfinite(lo)] = _SHIFT
    var_anchor[np.isfinite(lo)] = lo[np.isfinite(lo)]
    mirror_mask = ~np.isfinite(lo) & np.isfinite(up)
    var_mode[mirror_mask] = _MIRROR
    var_anchor[mirror_mask] = up[mirror_mask]
    split_mask = ~np.isfinite(lo) & ~np.isfinite(up)
    var_mode[split_mask] = _SPLIT

    var_col = np.empty(n, dtype=np.int64)
    var_col2 = np.full(n, -1, dtype=np.int64)
    next_col = 0
    for j in range(n):
        var_col[j] = next_col
        next_col += 1
        if var_mode[j] == _SPLIT:
            var_col2[j] = next_col
            next_col += 1

    row_kind = np.empty(m, dtype=np.int64)
    lo_fin = np.isfinite(p.row_lower)
    up_fin = np.isfinite(p.row_upper)
    row_kind[lo_fin & up_fin & (p.row_lower == p.row_upper)] = _ROW_EQ
    row_kind[lo_fin & up_fin & (p.row_lower < p.row_upper)] = _ROW_RANGE
    row_kind[lo_fin & ~up_fin] = _ROW_GE
    row_kind[~lo_fin & up_fin] = _ROW_LE
    free = ~lo_fin & ~up_fin
    if free.any():
        if not drop_free_rows:
            raise StandardFormError(
                f"{int(free.sum())} free row(s) (both bounds infinite); "
                "pass drop_free_rows=True to remove them"
            )
        log.info("dropping %d free row(s) during standardization", int(free.sum()))
        row_kind[free] = _ROW_FREE

    row_std = np.full(m, -1, dtype=np.int64)
    keep = row_kind != _ROW_FREE
    row_std[keep] = np.arange(int(keep.sum()))
    n_kept = int(keep.sum())

    row_slack_col = np.full(m, -1, dtype=np.int64)
    needs_slack = keep & (row_kind != _ROW_EQ)
    n_slacks = int(needs_slack.sum())
    row_slack_col[needs_slack] = next_col + np.arange(n_slacks)
    next_col += n_slacks

    # columns needing explicit upper-bound rows: shifted vars with finite
    # upper bound, plus range-row slacks
    b_cols, b_ubs = [], []
    shift_ub = (var_mode == _SHIFT) & np.isfinite(up)
    b_cols.append(var_col[shift_ub])
    b_ubs.append(up[shift_ub] - lo[shift_ub])
    rng_rows = row_kind == _ROW_RANGE
    b_cols.append(row_slack_col[rng_rows])
    b_ubs.append(p.row_upper[rng_rows] - p.row_lower[rng_rows])
    bound_col = np.concatenate(b_cols).astype(np.int64)
    bound_ub = np.concatenate(b_ubs)
    n_bounds = bound_col.size
    bound_slack_col = next_col + np.arange(n_bounds, dtype=np.int64)
    next_col += n_bounds
    bound_row = n_kept + np.arange(n_bounds, dtype=np.int64)

    n_std_cols = next_col
    n_std_rows = n_kept + n_bounds

    # assemble triplets: transformed original entries, slacks, bound rows
    A = p.matrix
    ent_row = A.row_of_entry()
    ent_keep = keep[ent_row]
    e_rows = row_std[ent_row[ent_keep]]
    e_cols_orig = A.col_indices[ent_keep]
    e_vals = A.values[ent_keep]

    rhs = np.where(
        (row_kind == _ROW_LE) | (row_kind == _ROW_RANGE), p.row_upper, p.row_lower
    )[keep].copy()

    # rhs shift from variable transforms: subtract a_ij * anchor for SHIFT,
    # and for MIRROR the column is negated around its anchor.
    mode_e = var_mode[e_cols_orig]
    anchor_e = var_anchor[e_cols_orig]
    contrib = np.where(mode_e == _SPLIT, 0.0, e_vals * anchor_e)
    np.add.at(rhs, e_rows, -contrib)

    out_rows = [e_rows]
    out_cols = [var_col[e_cols_orig]]
    out_vals = [np.where(mode_e == _MIRROR, -e_vals, e_vals)]

    split_e = mode_e == _SPLIT
    out_rows.append(e_rows[split_e])
    out_cols.append(var_col2[e_cols_orig[split_e]])
    out_vals.append(-e_vals[split_e])

    ge = keep & (row_kind == _ROW_GE)
    out_rows.append(row_std[ge])
    out_cols.append(row_slack_col[ge])
    out_vals.append(np.full(int(ge.sum()), -1.0))
    le_r = keep & ((row_kind == _ROW_LE) | (row_kind == _ROW_RANGE))
    out_rows.append(row_std[le_r])
    out_cols.append(row_slack_col[le_r])
    out_vals.append(np.full(int(le_r.sum()), 1.0))

    out_rows += [bound_row, bound_row]
    out_cols += [bound_col, bound_slack_col]
    out_vals += [np.ones(n_bounds), np.ones(n_bounds)]
    rhs = np.concatenate([rhs, bound_ub])

    matrix = SparseMatrix.from_coo(
        n_std_rows,
        n_std_cols,
        np.concatenate(out_rows),
        np.concatenate(out_cols),
        np.concatenate(out_vals),
    )

    c_std = np.zeros(n_std_cols)
    c_std[var_col] = np.where(var_mode == _MIRROR, -p.objective, p.objective)
    split_idx = np.flatnonzero(var_mode == _SPLIT)
    c_std[var_col2[split_idx]] = -p.objective[split_idx]
    obj_const = p.objective_constant
    shift_j = var_mode == _SHIFT
    obj_const += float(p.objective[shift_j] @ var_anchor[shift_j])
    obj_const += float(p.objective[mirror_mask] @ var_anchor[mirror_mask])

    mapping = StandardFormMap(
        source=p,
        var_mode=var_mode,
        var_col=var_col,
        var_col2=var_col2,
        var_anchor=var_anchor,
        row_kind=row_kind,
        row_std=row_std,
        row_slack_col=row_slack_col,
        bound_col=bound_col,
        bound_ub=bound_ub,
        bound_slack_col=bound_slack_col,
        bound_row=bound_row,
        n_std_rows=n_std_rows,
        n_std_cols=n_std_cols,
        objective_constant=obj_const,
    )
    return StandardLp(matrix=matrix, rhs=rhs, objective=c_std, mapping=mapping)


@dataclass(eq=False)
class PrimalDualIterate:
    """Candidate solution triple (x, y, z) for a standard-form problem."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        self.x = _as_float_array(self.x, "x")
        self.y = _as_float_array(self.y, "y")
        self.z = _as_float_array(self.z, "z")


@dataclass(frozen=True)
class ResidualReport:
    rP_inf: float
    rP_2: float
    rD_inf: float
    rD_2: float
    complementarity: float
    abs_gap: float
    rel_gap: float


def _norms(v: np.ndarray) -> tuple[float, float]:
    if v.size == 0:
        return 0.0, 0.0
    return float(np.abs(v).max()), float(np.linalg.norm(v))


def residuals(p: StandardLp, it: PrimalDualIterate) -> ResidualReport:
    """Primal/dual residual norms, complementarity and objective gap."""
    if it.x.shape != (p.n_cols,) or it.y.shape != (p.n_rows,) or it.z.shape != (p.n_cols,):
        raise ContractViolation(
            f"iterate dims {it.x.shape}/{it.y.shape}/{it.z.shape} do not match "
            f"problem {p.n_rows}x{p.n_cols}"
        )
    r_p = p.rhs - matvec(p.matrix, it.x)
    r_d = p.objective - matvec_transpose(p.matrix, it.y) - it.z
    rp_inf, rp_2 = _norms(r_p)
    rd_inf, rd_2 = _norms(r_d)
    comp = float(it.x @ it.z) / p.n_cols if p.n_cols else 0.0
    cx = float(p.objective @ it.x)
    by = float(p.rhs @ it.y)
    abs_gap = abs(cx - by)
    rel_gap = abs_gap / (1.0 + abs(cx) + abs(by))
    return ResidualReport(rp_inf, rp_2, rd_inf, rd_2, comp, abs_gap, rel_gap)


_ALGORITHMS = ("simplex", "interior_point", "pdhg")
_DEFAULT_EPS = {"simplex": 1e-6, "interior_point": 1e-8, "pdhg": 1e-6}


@dataclass(frozen=True)
class ToleranceProfile:
    algorithm: str
    epsilon: float

    def __post_init__(self):
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if not (self.epsilon > 0):
            raise ValueError("epsilon must be positive")

    @classmethod
    def default(cls, algorithm: str) -> "ToleranceProfile":
        return cls(algorithm, _DEFAULT_EPS[algorithm])


@dataclass(frozen=True)
class ProblemNorms:
    norm_b_2: float
    norm_c_2: float

    @classmethod
    def of(cls, p: StandardLp) -> "ProblemNorms":
        return cls(float(np.linalg.norm(p.rhs)), float(np.linalg.norm(p.objective)))


def check_termination(r: ResidualReport, prof: ToleranceProfile, norms: ProblemNorms) -> bool:
    """Per-algorithm stopping test on a residual report.

    simplex:        ||rP||_inf <= eps and ||rD||_inf <= eps
    interior_point: ||rP||_2 <= eps(1+||b||), ||rD||_2 <= eps(1+||c||), x.z/n <= eps
    pdhg:           ||rP||_2 <= eps(1+||b||), ||rD||_2 <= eps(1+||c||), rel_gap <= eps
    """
    if norms.norm_b_2 < 0 or norms.norm_c_2 < 0:
        raise ValueError("norms must be nonnegative")
    eps = prof.epsilon
    if prof.algorithm == "simplex":
        return r.rP_inf <= eps and r.rD_inf <= eps
    p_ok = r.rP_2 <= eps * (1.0 + norms.norm_b_2)
    d_ok = r.rD_2 <= eps * (1.0 + norms.norm_c_2)
    if prof.algorithm == "interior_point":
        return p_ok and d_ok and r.complementarity <= eps
    return p_ok and d_ok and r.rel_gap <= eps
