"""Deterministic dense LP solver.

Small dense problems only: a two-phase tableau simplex with Bland's rule
(lowest eligible entering column; leaving row by minimum ratio with exact
ties broken by lowest basis index).  The rule is anti-cycling and makes
every solve reproducible bit for bit: identical problem and config produce
identical pivot sequences, hence identical solutions.

Constraint rows are equilibrated by powers of two before solving, which
changes no binary value exactly representable in the data and keeps the
stated tolerances meaningful across scales.

The pivot loop itself lives in a kernel module: the compiled
``_simplex_core`` extension when importable, else the pure-NumPy twin
``_simplex_py``.  Set FACETBENCH_PURE_PYTHON=1 (or call ``set_kernel``)
to force the fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _simplex_py
from .errors import SolverError

try:
    from . import _simplex_core
except ImportError:
    _simplex_core = None

_MAXITER = 200_000

_kernel = _simplex_py if (
    _simplex_core is None or os.environ.get("FACETBENCH_PURE_PYTHON") == "1"
) else _simplex_core


def set_kernel(name: str) -> None:
    """Select the pivot kernel: 'cython', 'python', or 'auto'."""
    global _kernel
    if name == "python":
        _kernel = _simplex_py
    elif name == "cython":
        if _simplex_core is None:
            raise SolverError("compiled kernel not available (extension not built)")
        _kernel = _simplex_core
    elif name == "auto":
        _kernel = _simplex_core if _simplex_core is not None else _simplex_py
    else:
        raise SolverError(f"unknown kernel {name!r}")


def kernel_name() -> str:
    return _kernel.KERNEL_NAME


def available_kernels() -> tuple[str, ...]:
    return ("python", "cython") if _simplex_core is not None else ("python",)


@dataclass(frozen=True)
class SolverConfig:
    """Numerical policy shared by every program the engine emits.

    priority_weight is the lexicographic weight W of the signed-slack
    program; big_m_scale fixes the test-oracle Big-M at
    ``big_m_scale * max output value`` of the active data.
    """

    feasibility_tol: float = 1e-9
    optimality_tol: float = 1e-9
    priority_weight: float = 10_000.0
    big_m_scale: float = 10.0
    pivot_rule: str = "bland"

    def __post_init__(self):
        if self.feasibility_tol <= 0 or self.optimality_tol <= 0:
            raise SolverError("tolerances must be positive")
        if self.pivot_rule != "bland":
            raise SolverError(f"unknown pivot rule {self.pivot_rule!r}")


@dataclass
class LpProblem:
    """min/max c@x subject to A x (<=|=|>=) b and lower <= x <= upper.

    Bounds default to [0, +inf).  All matrix/vector coefficients must be
    finite; bounds may be infinite.
    """

    sense: str
    c: np.ndarray
    A: np.ndarray
    relations: tuple[str, ...]
    b: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise SolverError(f"sense must be min or max, got {self.sense!r}")
        self.c = np.asarray(self.c, dtype=float)
        self.A = np.asarray(self.A, dtype=float).reshape(len(self.relations), -1) \
            if np.size(self.A) else np.zeros((len(self.relations), self.c.size))
        self.b = np.asarray(self.b, dtype=float)
        nvar = self.c.size
        nrow = len(self.relations)
        if self.A.shape != (nrow, nvar):
            raise SolverError(f"constraint matrix shape {self.A.shape} != ({nrow}, {nvar})")
        if self.b.shape != (nrow,):
            raise SolverError(f"rhs shape {self.b.shape} != ({nrow},)")
        if any(rel not in ("<=", "=", ">=") for rel in self.relations):
            raise SolverError(f"relations must be <=, =, >=: {self.relations}")
        self.lower = np.zeros(nvar) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.full(nvar, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)
        if self.lower.shape != (nvar,) or self.upper.shape != (nvar,):
            raise SolverError("bound vectors must match the variable count")
        for arr, what in ((self.c, "objective"), (self.A, "matrix"), (self.b, "rhs")):
            if not np.all(np.isfinite(arr)):
                raise SolverError(f"non-finite coefficient in {what}")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise SolverError("NaN variable bound")
        if np.any(self.lower > self.upper):
            raise SolverError("lower bound exceeds upper bound")


@dataclass(frozen=True)
class LpSolution:
    """Solve outcome.  x and value are meaningful only when optimal.

    degenerate_optimal_face is True when the optimal face has dimension
    >= 1 (an alternate optimum reachable by a positive step, or an optimal
    ray), so callers can apply their own secondary criterion.
    """

    status: str  # optimal | infeasible | unbounded
    value: float
    x: np.ndarray
    degenerate_optimal_face: bool = False
    iterations: int = 0


def _pow2_row_scale(row: np.ndarray, rhs: float) -> float:
    """Power-of-two factor bringing max|coefficient| into [1, 2)."""
    mx = float(np.max(np.abs(row))) if row.size else 0.0
    mx = max(mx, abs(rhs))
    if mx == 0.0:
        return 1.0
    return math.ldexp(1.0, math.frexp(mx)[1] - 1)


def solve_lp(problem: LpProblem, cfg: SolverConfig | None = None) -> LpSolution:
    """Solve a dense LP; deterministic given (problem, config, kernel)."""
    cfg = cfg or SolverConfig()
    nvar = problem.c.size

    # Substitute variables so every standard column is >= 0.
    # back[j] describes how to recover original x_j from standard columns.
    cols_of: list[tuple[str, int, float, int]] = []  # (kind, col, offset, col2)
    std_cols = 0
    extra_rows: list[tuple[np.ndarray, str, float]] = []
    for j in range(nvar):
        lo, hi = problem.lower[j], problem.upper[j]
        if np.isfinite(lo):
            cols_of.append(("shift", std_cols, lo, -1))
            std_cols += 1
        elif np.isfinite(hi):
            cols_of.append(("neg", std_cols, hi, -1))
            std_cols += 1
        else:
            cols_of.append(("split", std_cols, 0.0, std_cols + 1))
            std_cols += 2

    def to_std_row(row: np.ndarray) -> tuple[np.ndarray, float]:
        """Rewrite a row over original variables; returns (row', rhs shift)."""
        out = np.zeros(std_cols)
        shift = 0.0
        for j in range(nvar):
            kind, col, off, col2 = cols_of[j]
            a = row[j]
            if a == 0.0:
                continue
            if kind == "shift":
                out[col] += a
                shift += a * off
            elif kind == "neg":
                out[col] -= a
                shift += a * off
            else:
                out[col] += a
                out[col2] -= a
        return out, shift

    rows: list[np.ndarray] = []
    rels: list[str] = []
    rhs: list[float] = []
    for i in range(problem.A.shape[0]):
        r, shift = to_std_row(problem.A[i])
        rows.append(r)
        rels.append(problem.relations[i])
        rhs.append(problem.b[i] - shift)
    # Finite upper bounds on shifted columns become explicit rows.
    for j in range(nvar):
        kind, col, off, _ = cols_of[j]
        if kind == "shift" and np.isfinite(problem.upper[j]):
            r = np.zeros(std_cols)
            r[col] = 1.0
            rows.append(r)
            rels.append("<=")
            rhs.append(problem.upper[j] - off)

    c_std = np.zeros(std_cols)
    sign = 1.0 if problem.sense == "min" else -1.0
    for j in range(nvar):
        kind, col, off, col2 = cols_of[j]
        a = sign * problem.c[j]
        if kind == "neg":
            c_std[col] -= a
        else:
            c_std[col] += a
            if kind == "split":
                c_std[col2] -= a

    # Scale, orient rhs nonnegative, classify rows.
    ftol = cfg.feasibility_tol
    kept: list[tuple[np.ndarray, str, float]] = []
    for r, rel, beta in zip(rows, rels, rhs):
        scale = _pow2_row_scale(r, beta)
        r = r / scale
        beta = beta / scale
        if not np.any(r != 0.0):
            sat = (beta >= -ftol) if rel == "<=" else (beta <= ftol) if rel == ">=" else (abs(beta) <= ftol)
            if not sat:
                return LpSolution("infeasible", math.nan, np.full(nvar, math.nan))
            continue
        if beta < 0.0:
            r = -r
            beta = -beta
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        kept.append((r, rel, beta))

    nrow = len(kept)
    n_slack = sum(1 for _, rel, _ in kept if rel != "=")
    n_art = sum(1 for _, rel, _ in kept if rel != "<=")
    total = std_cols + n_slack + n_art
    T = np.zeros((nrow + 1, total + 1))
    basis = np.empty(nrow, dtype=np.int64)
    art_start = std_cols + n_slack
    s_at, a_at = std_cols, art_start
    art_rows: list[int] = []
    for i, (r, rel, beta) in enumerate(kept):
        T[i, :std_cols] = r
        T[i, total] = beta
        if rel == "<=":
            T[i, s_at] = 1.0
            basis[i] = s_at
            s_at += 1
        elif rel == ">=":
            T[i, s_at] = -1.0
            s_at += 1
            T[i, a_at] = 1.0
            basis[i] = a_at
            a_at += 1
            art_rows.append(i)
        else:
            T[i, a_at] = 1.0
            basis[i] = a_at
            a_at += 1
            art_rows.append(i)

    iters = 0
    if n_art:
        # Phase 1: minimize the artificial sum; reduced costs are the
        # negated sums of the artificial-basic rows.
        for i in art_rows:
            T[nrow, :] -= T[i, :]
        T[nrow, art_start:total] = 0.0
        code, it = _kernel.run(T, basis, art_start, cfg.optimality_tol, _MAXITER)
        iters += it
        if code == _simplex_py.MAXITER:
            raise SolverError("phase-1 iteration limit exceeded")
        if code == _simplex_py.UNBOUNDED:
            raise SolverError("phase-1 reported unbounded (cannot happen)")
        if -T[nrow, total] > ftol * max(1.0, float(np.max(np.abs(T[:nrow, total]))) if nrow else 1.0):
            return LpSolution("infeasible", math.nan, np.full(nvar, math.nan), iterations=iters)
        # Drive leftover artificials out of the basis; rows that offer no
        # pivot are redundant and get dropped.
        drop_rows: list[int] = []
        for i in range(nrow):
            if basis[i] < art_start:
                continue
            seg = np.abs(T[i, :art_start])
            j = int(np.argmax(seg))
            if seg[j] > cfg.optimality_tol:
                _kernel.pivot(T, basis, i, j)
                iters += 1
            else:
                drop_rows.append(i)
        keep_rows = [i for i in range(nrow) if i not in drop_rows]
        T = np.ascontiguousarray(np.vstack([T[keep_rows, :], T[nrow:, :]])[:, list(range(art_start)) + [total]])
        basis = basis[keep_rows]
        nrow = len(keep_rows)
        total = art_start

    # Phase 2 objective row: eliminate basic columns from c_std.
    T[nrow, :] = 0.0
    T[nrow, :std_cols] = c_std
    for i in range(nrow):
        cb = T[nrow, basis[i]]
        if cb != 0.0:
            T[nrow, :] -= cb * T[i, :]
    T = np.ascontiguousarray(T)
    code, it = _kernel.run(T, basis, total, cfg.optimality_tol, _MAXITER)
    iters += it
    if code == _simplex_py.MAXITER:
        raise SolverError("phase-2 iteration limit exceeded")
    if code == _simplex_py.UNBOUNDED:
        return LpSolution("unbounded", math.nan, np.full(nvar, math.nan), iterations=iters)

    x_std = np.zeros(total)
    x_std[basis] = T[:nrow, total]
    # basic values can round a hair below zero; clamp the noise so callers
    # see bound-feasible solutions
    if nrow and float(np.min(x_std)) < -1e3 * ftol:
        raise SolverError("basis produced a significantly negative basic value")
    np.maximum(x_std, 0.0, out=x_std)
    x = np.empty(nvar)
    for j in range(nvar):
        kind, col, off, col2 = cols_of[j]
        if kind == "shift":
            x[j] = off + x_std[col]
        elif kind == "neg":
            x[j] = off - x_std[col]
        else:
            x[j] = x_std[col] - x_std[col2]
    value = float(np.sum(problem.c * x))

    # Alternate-optima probe: a nonbasic column with zero reduced cost that
    # admits a positive step (or an optimal ray) spans an optimal face of
    # dimension >= 1.
    degenerate = False
    in_basis = np.zeros(total, dtype=bool)
    in_basis[basis] = True
    for j in range(total):
        if in_basis[j] or abs(T[nrow, j]) > cfg.optimality_tol:
            continue
        column = T[:nrow, j]
        mask = column > cfg.optimality_tol
        if not mask.any():
            degenerate = True
            break
        step = float(np.min(T[:nrow, total][mask] / column[mask]))
        if step > ftol:
            degenerate = True
            break

    return LpSolution("optimal", value, x, degenerate_optimal_face=degenerate, iterations=iters)
