"""Restarted, averaged PDHG for the generalized bounded LP form.

One iteration is a pair of sparse matrix-vector products plus dense vector
arithmetic:

    x+ = clip(x - tau (c - A'y), l, u)
    y+ = y + sigma (clip(A(2x+ - x) - y/sigma, L, U) - A(2x+ - x))

The dual update is the exact proximal step for the row-range indicator, so a
single multiplier per row handles equalities, one-sided rows and ranges with
the activity-dependent sign restriction.  Constant step sizes come from a
power-method bound on ||A||; uniform iterate averages are kept and the solver
restarts to the average on sufficient decay of its combined relative
residual.  All reported residuals are measured on the original (unscaled)
problem via its standard form.

Hyperparameters (step rule, averaging, restart trigger, Ruiz scaling) are
this package's choices; the termination criteria and the 1e-6 default are
the conventional PDHG ones.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from lpasympt.lp_core import (
    LpProblem,
    PrimalDualIterate,
    ProblemNorms,
    ResidualReport,
    SparseMatrix,
    ToleranceProfile,
    check_termination,
    matvec,
    matvec_transpose,
    residuals,
    to_standard_form,
)

POWER_ITERATIONS = 30
NORM_SAFETY = 1.05
RUIZ_SWEEPS = 10


class SolveStatus(enum.Enum):
    OPTIMAL = "Optimal"
    ITERATION_LIMIT = "IterationLimit"
    TIME_LIMIT = "TimeLimit"
    NUMERICAL_TROUBLE = "NumericalTrouble"


@dataclass(frozen=True)
class PdhgConfig:
    epsilon: float = 1e-6
    max_iterations: int = 200_000
    time_limit_seconds: float = 3600.0
    check_interval: int = 64
    restart_beta: float = 0.2
    scaling_enabled: bool = True
    primal_weight_init: float = 1.0
    norm_seed: int = 0

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be nonnegative")
        if not (self.time_limit_seconds > 0):
            raise ValueError("time_limit_seconds must be positive")
        if self.check_interval < 1:
            raise ValueError("check_interval must be at least 1")
        if not (0.0 < self.restart_beta < 1.0):
            raise ValueError("restart_beta must lie in (0, 1)")
        if not (self.primal_weight_init > 0):
            raise ValueError("primal_weight_init must be positive")


@dataclass
class PdhgStats:
    iterations: int = 0
    matvec_count: int = 0
    restarts: int = 0
    wall_seconds_iterations: float = 0.0
    wall_seconds_total: float = 0.0
    residuals: ResidualReport | None = None
    trouble_iteration: int | None = None


def estimate_operator_norm(A: SparseMatrix, iters: int = POWER_ITERATIONS, seed: int = 0) -> float:
    """Power-method estimate of ||A||_2; deterministic for a given seed."""
    if iters < 1:
        raise ValueError("iters must be at least 1")
    if A.nnz == 0:
        return 0.0
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0x5EED], dtype=np.uint64)))
    v = rng.standard_normal(A.n_cols)
    nv = np.linalg.norm(v)
    if nv == 0.0:
        return 0.0
    v /= nv
    est = 0.0
    for _ in range(iters):
        w = matvec(A, v)
        est = float(np.linalg.norm(w))
        if est == 0.0:
            return 0.0
        u = matvec_transpose(A, w)
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return est
        v = u / nu
    return est


def diagonal_scale(p: LpProblem, sweeps: int = RUIZ_SWEEPS):
    """Ruiz equilibration toward unit row/column infinity norms.

    Returns (scaled problem, row_scale, col_scale) with

        A_scaled = diag(row_scale) A diag(col_scale)

    so ``x = col_scale * x_scaled`` and ``y = row_scale * y_scaled`` recover
    original-space points exactly.
    """
    m, n = p.n_rows, p.n_cols
    vals = p.matrix.values.copy()
    rows = p.matrix.row_of_entry()
    cols = p.matrix.col_indices
    row_scale = np.ones(m)
    col_scale = np.ones(n)
    for _ in range(sweeps):
        row_max = np.zeros(m)
        np.maximum.at(row_max, rows, np.abs(vals))
        rs = np.ones(m)
        nz = row_max > 0
        rs[nz] = 1.0 / np.sqrt(row_max[nz])
        vals *= rs[rows]
        row_scale *= rs
        col_max = np.zeros(n)
        np.maximum.at(col_max, cols, np.abs(vals))
        cs = np.ones(n)
        nz = col_max > 0
        cs[nz] = 1.0 / np.sqrt(col_max[nz])
        vals *= cs[cols]
        col_scale *= cs
    matrix = SparseMatrix(m, n, p.matrix.row_offsets.copy(), cols.copy(), vals)
    inv_col = 1.0 / col_scale
    scaled = LpProblem(
        objective=p.objective * col_scale,
        matrix=matrix,
        row_lower=p.row_lower * row_scale,
        row_upper=p.row_upper * row_scale,
        var_lower=p.var_lower * inv_col,
        var_upper=p.var_upper * inv_col,
        objective_constant=p.objective_constant,
    )
    return scaled, row_scale, col_scale


@dataclass
class _Candidate:
    x: np.ndarray
    y: np.ndarray
    report: ResidualReport
    kappa: float
    optimal: bool


def _combined_residual(rep: ResidualReport, norms: ProblemNorms) -> float:
    return (
        rep.rP_2 / (1.0 + norms.norm_b_2)
        + rep.rD_2 / (1.0 + norms.norm_c_2)
        + rep.rel_gap
    )


def solve_pdhg(
    p: LpProblem, cfg: PdhgConfig | None = None
) -> tuple[PrimalDualIterate, SolveStatus, PdhgStats]:
    """Solve a feasible bounded LP; terminates via limits otherwise.

    The returned iterate holds the original-space primal x, one dual per
    original row, and z = c - A'y (the unrestricted reduced-cost vector).
    """
    cfg = cfg or PdhgConfig()
    stats = PdhgStats()
    t_start = time.perf_counter()

    std = to_standard_form(p, drop_free_rows=True)
    norms = ProblemNorms.of(std)
    profile = ToleranceProfile("pdhg", cfg.epsilon)

    if cfg.scaling_enabled:
        sp_, row_scale, col_scale = diagonal_scale(p)
    else:
        sp_, row_scale, col_scale = p, np.ones(p.n_rows), np.ones(p.n_cols)

    est = estimate_operator_norm(sp_.matrix, POWER_ITERATIONS, cfg.norm_seed)
    stats.matvec_count += 2 * POWER_ITERATIONS if sp_.matrix.nnz else 0
    if est == 0.0:
        tau = sigma = 1.0
    else:
        bound = NORM_SAFETY * est
        tau = 1.0 / (bound * cfg.primal_weight_init)
        sigma = cfg.primal_weight_init / bound

    lo, hi = sp_.var_lower, sp_.var_upper
    L, U = sp_.row_lower, sp_.row_upper
    c = sp_.objective
    A = sp_.matrix
    m, n = A.n_rows, A.n_cols

    x = np.clip(np.zeros(n), lo, hi)
    y = np.zeros(m)

    def evaluate(xs, ys) -> _Candidate:
        x_o = col_scale * xs
        y_o = row_scale * ys
        it = std.mapping.iterate_from_bounded(std, x_o, y_o)
        rep = residuals(std, it)
        return _Candidate(
            x_o, y_o, rep, _combined_residual(rep, norms),
            check_termination(rep, profile, norms),
        )

    def finish(cand: _Candidate, status: SolveStatus):
        stats.residuals = cand.report
        stats.wall_seconds_total = time.perf_counter() - t_start
        z = p.objective - matvec_transpose(p.matrix, cand.y)
        return PrimalDualIterate(cand.x, cand.y, z), status, stats

    start = evaluate(x, y)
    if start.optimal:
        return finish(start, SolveStatus.OPTIMAL)
    if cfg.max_iterations == 0:
        return finish(start, SolveStatus.ITERATION_LIMIT)
    kappa_last_restart = start.kappa

    sum_x = np.zeros(n)
    sum_y = np.zeros(m)
    n_avg = 0
    status = None
    best = start

    while status is None:
        batch = min(cfg.check_interval, cfg.max_iterations - stats.iterations)
        t_batch = time.perf_counter()
        for _ in range(batch):
            grad = c - matvec_transpose(A, y)
            x_new = np.clip(x - tau * grad, lo, hi)
            ax = matvec(A, 2.0 * x_new - x)
            y = y + sigma * (np.clip(ax - y / sigma, L, U) - ax)
            x = x_new
            sum_x += x
            sum_y += y
            n_avg += 1
        stats.iterations += batch
        stats.matvec_count += 2 * batch
        stats.wall_seconds_iterations += time.perf_counter() - t_batch

        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            stats.trouble_iteration = stats.iterations
            stats.residuals = best.report
            stats.wall_seconds_total = time.perf_counter() - t_start
            z = p.objective - matvec_transpose(p.matrix, best.y)
            return PrimalDualIterate(best.x, best.y, z), SolveStatus.NUMERICAL_TROUBLE, stats

        cur = evaluate(x, y)
        avg = evaluate(sum_x / n_avg, sum_y / n_avg)
        best = cur if cur.kappa <= avg.kappa else avg
        if cur.optimal or avg.optimal:
            if cur.optimal and avg.optimal:
                winner = cur if cur.kappa <= avg.kappa else avg
            else:
                winner = cur if cur.optimal else avg
            return finish(winner, SolveStatus.OPTIMAL)
        if stats.iterations >= cfg.max_iterations:
            status = SolveStatus.ITERATION_LIMIT
            break
        if time.perf_counter() - t_start >= cfg.time_limit_seconds:
            status = SolveStatus.TIME_LIMIT
            break
        if avg.kappa < cfg.restart_beta * kappa_last_restart:
            x = sum_x / n_avg
            y = sum_y / n_avg
            sum_x = np.zeros(n)
            sum_y = np.zeros(m)
            n_avg = 0
            stats.restarts += 1
            kappa_last_restart = avg.kappa

    return finish(best, status)
