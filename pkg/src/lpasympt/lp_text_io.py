"""LP-format writer and round-trip parser.

The grammar is the strict dialect documented in ``docs/lp-format.md``:
section keywords start in column 0 in the fixed order Minimize, Subject To,
Bounds, End; every data line is indented by one space; every variable gets a
Bounds line; range rows are written as an adjacent ``<name>_lo`` /
``<name>_hi`` inequality pair which the parser folds back into one row.
Coefficients are printed with the shortest decimal form that round-trips the
64-bit value, so write -> parse -> write is byte-identical.
"""

from __future__ import annotations

import re

import numpy as np

from lpasympt.lp_core import INF, LpProblem, SparseMatrix


class LpParseError(ValueError):
    def __init__(self, line: int, message: str, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")


class LpWriteError(ValueError):
    pass


def format_number(v: float) -> str:
    """Shortest decimal representation that parses back to the same float."""
    if v == 0.0:
        return "0"
    return repr(float(v))


def _render_terms(cols, vals, names) -> str:
    if len(cols) == 0:
        return "0"
    pieces = []
    for k, (j, a) in enumerate(zip(cols, vals)):
        mag = abs(a)
        coef = "" if mag == 1.0 else format_number(mag) + " "
        if k == 0:
            sign = "- " if a < 0 else ""
        else:
            sign = " - " if a < 0 else " + "
        pieces.append(f"{sign}{coef}{names[j]}")
    return "".join(pieces)


def default_col_name(j: int) -> str:
    return f"x{j}"


def default_row_name(i: int) -> str:
    return f"r{i}"


def write_lp(p: LpProblem) -> str:
    """Render a problem as canonical LP text (see docs/lp-format.md)."""
    col_names = p.col_names or [default_col_name(j) for j in range(p.n_cols)]
    row_names = p.row_names or [default_row_name(i) for i in range(p.n_rows)]
    out = ["Minimize\n"]
    obj_cols = np.flatnonzero(p.objective)
    obj = _render_terms(obj_cols, p.objective[obj_cols], col_names)
    if p.objective_constant != 0.0:
        cst = format_number(abs(p.objective_constant))
        if len(obj_cols) == 0:
            obj = format_number(p.objective_constant)
        else:
            obj += (" - " if p.objective_constant < 0 else " + ") + cst
    out.append(f" obj: {obj}\n")

    out.append("Subject To\n")
    off = p.matrix.row_offsets
    for i in range(p.n_rows):
        cols = p.matrix.col_indices[off[i] : off[i + 1]]
        vals = p.matrix.values[off[i] : off[i + 1]]
        terms = _render_terms(cols, vals, col_names)
        lo, hi = p.row_lower[i], p.row_upper[i]
        name = row_names[i]
        if lo == -INF and hi == INF:
            raise LpWriteError(f"row {name!r} is free; the LP grammar has no free rows")
        if lo == hi:
            out.append(f" {name}: {terms} = {format_number(lo)}\n")
        elif hi == INF:
            out.append(f" {name}: {terms} >= {format_number(lo)}\n")
        elif lo == -INF:
            out.append(f" {name}: {terms} <= {format_number(hi)}\n")
        else:
            out.append(f" {name}_lo: {terms} >= {format_number(lo)}\n")
            out.append(f" {name}_hi: {terms} <= {format_number(hi)}\n")

    out.append("Bounds\n")
    for j in range(p.n_cols):
        lo, hi = p.var_lower[j], p.var_upper[j]
        name = col_names[j]
        if lo == -INF and hi == INF:
            out.append(f" -inf <= {name} <= +inf\n")
        elif lo == -INF:
            out.append(f" -inf <= {name} <= {format_number(hi)}\n")
        elif lo == hi:
            out.append(f" {name} = {format_number(lo)}\n")
        elif hi == INF:
            out.append(f" {name} >= {format_number(lo)}\n")
        else:
            out.append(f" {format_number(lo)} <= {name} <= {format_number(hi)}\n")
    out.append("End\n")
    return "".join(out)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*")
_NUM_RE = re.compile(r"[+-]?(\d+\.?\d*([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?|inf)")
_SECTIONS = ("Minimize", "Subject To", "Bounds", "End")


class _Tokenizer:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def error(self, msg):
        raise LpParseError(self.line, msg, column=self.pos + 1)

    def take_name(self) -> str:
        self._skip_ws()
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(0)

    def take_number(self) -> float:
        self._skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return float(m.group(0))

    def try_number(self) -> float | None:
        self._skip_ws()
        m = _NUM_RE.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return float(m.group(0))

    def take_op(self) -> str:
        self._skip_ws()
        for op in ("<=", ">=", "="):
            if self.text.startswith(op, self.pos):
                self.pos += len(op)
                return op
        self.error("expected one of <=, >=, =")

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.text)


def _parse_expr(tk: _Tokenizer) -> tuple[dict[str, float], float]:
    """Parse a linear expression; returns (name -> coefficient, constant)."""
    terms: dict[str, float] = {}
    constant = 0.0
    first = True
    while True:
        ch = tk.peek()
        if ch is None or ch in "<>=":
            if first:
                tk.error("empty expression")
            return terms, constant
        sign = 1.0
        if ch in "+-":
            if first and ch == "+":
                tk.error("unexpected leading +")
            sign = -1.0 if ch == "-" else 1.0
            tk.pos += 1
            tk._skip_ws()
            ch = tk.peek()
        elif not first:
            tk.error("expected + or - between terms")
        if ch is None:
            tk.error("dangling sign")
        if _NUM_RE.match(tk.text, tk.pos):
            coef = sign * tk.take_number()
            nxt = tk.peek()
            if nxt is not None and _NAME_RE.match(tk.text, tk.pos):
                name = tk.take_name()
                if name in terms:
                    tk.error(f"duplicate variable {name!r} in expression")
                terms[name] = coef
            else:
                constant += coef
        elif _NAME_RE.match(tk.text, tk.pos):
            name = tk.take_name()
            if name in terms:
                tk.error(f"duplicate variable {name!r} in expression")
            terms[name] = sign
        else:
            tk.error("malformed term")
        first = False


def _parse_bound_line(tk: _Tokenizer):
    """Returns (name, lower, upper) from one Bounds data line."""
    # forms: "a <= x <= b" | "x <= b" | "x >= a" | "x = v"
    tk._skip_ws()
    name_m = _NAME_RE.match(tk.text, tk.pos)
    num_m = _NUM_RE.match(tk.text, tk.pos)
    starts_with_name = name_m is not None and (num_m is None or name_m.end() > num_m.end())
    if starts_with_name:
        name = tk.take_name()
        op = tk.take_op()
        v = tk.take_number()
        if op == "<=":
            return name, 0.0, v
        if op == ">=":
            return name, v, INF
        return name, v, v
    lo = tk.take_number()
    if tk.take_op() != "<=":
        tk.error("expected <= in range bound")
    name = tk.take_name()
    if tk.take_op() != "<=":
        tk.error("expected <= in range bound")
    hi = tk.take_number()
    return name, lo, hi


def parse_lp(text: str) -> LpProblem:
    """Parse LP text produced by (or conforming to) :func:`write_lp`."""
    lines = text.split("\n")
    section = None
    seen = []
    obj_terms: dict[str, float] = {}
    obj_constant = 0.0
    obj_lines = 0
    rows: list[tuple[str, dict[str, float], float, float]] = []
    bounds: dict[str, tuple[float, float]] = {}
    bound_order: list[str] = []
    ended = False

    for lineno, raw in enumerate(lines, start=1):
        if raw.strip() == "":
            continue
        if ended:
            raise LpParseError(lineno, "content after End")
        if not raw.startswith(" "):
            header = raw.strip()
            if header not in _SECTIONS:
                raise LpParseError(lineno, f"unknown section {header!r}")
            expected = _SECTIONS[len(seen)] if len(seen) < len(_SECTIONS) else None
            if header != expected:
                raise LpParseError(lineno, f"section {header!r} out of order (expected {expected!r})")
            seen.append(header)
            section = header
            if header == "End":
                ended = True
            continue
        if section is None:
            raise LpParseError(lineno, "data before the Minimize section")
        tk = _Tokenizer(raw, lineno)
        if section == "Minimize":
            obj_lines += 1
            if obj_lines > 1:
                raise LpParseError(lineno, "multiple objective lines")
            tk.take_name()
            tk._skip_ws()
            if not tk.text.startswith(":", tk.pos):
                tk.error("expected ':' after objective label")
            tk.pos += 1
            obj_terms, obj_constant = _parse_expr(tk)
            if not tk.at_end():
                tk.error("trailing content on objective line")
        elif section == "Subject To":
            name = tk.take_name()
            tk._skip_ws()
            if not tk.text.startswith(":", tk.pos):
                tk.error("expected ':' after row label")
            tk.pos += 1
            terms, constant = _parse_expr(tk)
            op = tk.take_op()
            rhs = tk.take_number() - constant
            if not tk.at_end():
                tk.error("trailing content on constraint line")
            if op == "=":
                rows.append((name, terms, rhs, rhs))
            elif op == ">=":
                rows.append((name, terms, rhs, INF))
            else:
                rows.append((name, terms, -INF, rhs))
        elif section == "Bounds":
            name, lo, hi = _parse_bound_line(tk)
            if not tk.at_end():
                tk.error("trailing content on bounds line")
            if name in bounds:
                plo, phi = bounds[name]
                lo, hi = max(plo, lo), min(phi, hi)
            else:
                bound_order.append(name)
            if lo > hi:
                raise LpParseError(lineno, f"inconsistent bounds for {name!r}: [{lo}, {hi}]")
            bounds[name] = (lo, hi)
        else:
            raise LpParseError(lineno, "data after End")

    total = len(lines)
    for required in _SECTIONS:
        if required not in seen:
            raise LpParseError(total, f"missing section {required!r}")
    if obj_lines == 0:
        raise LpParseError(total, "missing objective line")

    # fold adjacent <name>_lo / <name>_hi pairs with identical terms back
    # into single range rows (the writer's range encoding)
    merged: list[tuple[str, dict[str, float], float, float]] = []
    i = 0
    while i < len(rows):
        name, terms, lo, hi = rows[i]
        if (
            name.endswith("_lo")
            and hi == INF
            and i + 1 < len(rows)
            and rows[i + 1][0] == name[:-3] + "_hi"
            and rows[i + 1][2] == -INF
            and rows[i + 1][1] == terms
        ):
            merged.append((name[:-3], terms, lo, rows[i + 1][3]))
            i += 2
        else:
            merged.append((name, terms, lo, hi))
            i += 1

    # variable order: Bounds-section order first (the writer lists every
    # variable there in column order), then any names seen only in the
    # objective or rows, in first appearance order
    col_index: dict[str, int] = {}
    col_names: list[str] = []

    def intern(name):
        if name not in col_index:
            col_index[name] = len(col_names)
            col_names.append(name)

    for name in bound_order:
        intern(name)
    for name in obj_terms:
        intern(name)
    for _, terms, _, _ in merged:
        for name in terms:
            intern(name)

    n = len(col_names)
    m = len(merged)
    objective = np.zeros(n)
    for name, coef in obj_terms.items():
        objective[col_index[name]] = coef
    var_lower = np.zeros(n)
    var_upper = np.full(n, INF)
    for name, (lo, hi) in bounds.items():
        var_lower[col_index[name]] = lo
        var_upper[col_index[name]] = hi

    t_rows, t_cols, t_vals = [], [], []
    row_lower = np.empty(m)
    row_upper = np.empty(m)
    row_names = []
    for i, (name, terms, lo, hi) in enumerate(merged):
        row_names.append(name)
        row_lower[i] = lo
        row_upper[i] = hi
        for vname, coef in terms.items():
            if coef != 0.0:
                t_rows.append(i)
                t_cols.append(col_index[vname])
                t_vals.append(coef)
    matrix = SparseMatrix.from_coo(m, n, t_rows, t_cols, t_vals)
    return LpProblem(
        objective=objective,
        matrix=matrix,
        row_lower=row_lower,
        row_upper=row_upper,
        var_lower=var_lower,
        var_upper=var_upper,
        row_names=row_names,
        col_names=col_names,
        objective_constant=obj_constant,
    )


def problems_equal(a: LpProblem, b: LpProblem) -> bool:
    """Structural and numeric equality (exact on stored values)."""
    return (
        a.n_rows == b.n_rows
        and a.n_cols == b.n_cols
        and a.matrix.nnz == b.matrix.nnz
        and np.array_equal(a.matrix.row_offsets, b.matrix.row_offsets)
        and np.array_equal(a.matrix.col_indices, b.matrix.col_indices)
        and np.array_equal(a.matrix.values, b.matrix.values)
        and np.array_equal(a.objective, b.objective)
        and a.objective_constant == b.objective_constant
        and np.array_equal(a.row_lower, b.row_lower)
        and np.array_equal(a.row_upper, b.row_upper)
        and np.array_equal(a.var_lower, b.var_lower)
        and np.array_equal(a.var_upper, b.var_upper)
    )
