"""Shared generator machinery: splittable RNG streams and a triplet builder.

Every random draw in a generator comes from a Philox counter-based stream
keyed by ``(seed, block)``; each family module documents its block numbers.
Identical (family, knobs, seed) inputs therefore regenerate byte-identical
instances on any platform.
"""

from __future__ import annotations

import numpy as np

from lpasympt.lp_core import INF, LpProblem, SparseMatrix

_MASK64 = (1 << 64) - 1


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Independent counter-based stream for one data block of one instance."""
    key = np.array([seed & _MASK64, block & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


class LpBuilder:
    """Accumulates variables, row ranges and coefficient triplets."""

    def __init__(self):
        self._obj: list[np.ndarray] = []
        self._var_lo: list[np.ndarray] = []
        self._var_hi: list[np.ndarray] = []
        self._row_lo: list[np.ndarray] = []
        self._row_hi: list[np.ndarray] = []
        self._rows: list[np.ndarray] = []
        self._cols: list[np.ndarray] = []
        self._vals: list[np.ndarray] = []
        self.n_cols = 0
        self.n_rows = 0

    def add_cols(self, count: int, obj, lo, hi) -> int:
        """Append a block of variables; returns the first column index."""
        start = self.n_cols
        self._obj.append(np.broadcast_to(np.asarray(obj, dtype=np.float64), (count,)).copy())
        self._var_lo.append(np.broadcast_to(np.asarray(lo, dtype=np.float64), (count,)).copy())
        self._var_hi.append(np.broadcast_to(np.asarray(hi, dtype=np.float64), (count,)).copy())
        self.n_cols += count
        return start

    def add_rows(self, count: int, lo, hi) -> int:
        start = self.n_rows
        self._row_lo.append(np.broadcast_to(np.asarray(lo, dtype=np.float64), (count,)).copy())
        self._row_hi.append(np.broadcast_to(np.asarray(hi, dtype=np.float64), (count,)).copy())
        self.n_rows += count
        return start

    def put(self, rows, cols, vals):
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        vals = np.asarray(vals, dtype=np.float64)
        if vals.ndim == 0:
            vals = np.full(rows.size, float(vals))
        else:
            vals = vals.ravel()
        self._rows.append(rows)
        self._cols.append(cols)
        self._vals.append(vals)

    def build(self) -> LpProblem:
        rows = np.concatenate(self._rows) if self._rows else np.zeros(0, dtype=np.int64)
        cols = np.concatenate(self._cols) if self._cols else np.zeros(0, dtype=np.int64)
        vals = np.concatenate(self._vals) if self._vals else np.zeros(0)
        matrix = SparseMatrix.from_coo(self.n_rows, self.n_cols, rows, cols, vals)
        return LpProblem(
            objective=np.concatenate(self._obj) if self._obj else np.zeros(0),
            matrix=matrix,
            row_lower=np.concatenate(self._row_lo) if self._row_lo else np.zeros(0),
            row_upper=np.concatenate(self._row_hi) if self._row_hi else np.zeros(0),
            var_lower=np.concatenate(self._var_lo) if self._var_lo else np.zeros(0),
            var_upper=np.concatenate(self._var_hi) if self._var_hi else np.zeros(0),
        )


FREE_ABOVE = INF
