"""Full-dimensional efficient facet enumeration.

A facet of the constant-returns cone is spanned by s+m-1 extreme DMUs
whose stacked (outputs, inputs) rows have full rank and whose
one-dimensional null direction, signed as (u, -v), is strictly positive
and supports every DMU in scope: u@y_j - v@x_j <= 0.  Enumeration is
exhaustive over all C(|extremes|, s+m-1) subsets, which is exact and
cheap at DEA scale (hundreds of candidates); datasets with hundreds of
extreme units would need the dedicated identification literature instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import DataError
from .lp import LpProblem, SolverConfig, solve_lp


@dataclass(frozen=True)
class FacetTolerances:
    rank_tol: float = 1e-9        # relative smallest/largest singular value
    support_tol: float = 1e-7     # residual after scaling each DMU row by its norm
    positivity_tol: float = 1e-9  # min component of the unit normal
    dedup_tol: float = 1e-7       # distance between unit normals


@dataclass(frozen=True)
class Facet:
    """One facet: spanning members (dataset indices, ascending) and the
    unit normal split into output part u and input part v, both > 0."""

    id: int
    members: tuple[int, ...]
    u: np.ndarray
    v: np.ndarray

    def value(self, y: np.ndarray, x: np.ndarray) -> float:
        """Signed distance proxy u@y - v@x (zero on the hyperplane)."""
        return float(np.sum(self.u * y) - np.sum(self.v * x))


@dataclass(frozen=True)
class FacetSet:
    facets: tuple[Facet, ...]
    extremes: tuple[int, ...]
    scope: str
    warnings: tuple[str, ...] = ()
    subsets_examined: int = 0

    def __len__(self) -> int:
        return len(self.facets)

    def by_id(self, fid: int) -> Facet:
        for f in self.facets:
            if f.id == fid:
                return f
        raise DataError(f"no facet with id {fid}")

    def ids(self) -> tuple[int, ...]:
        return tuple(f.id for f in self.facets)


def facet_normal(
    ds: Dataset,
    subset: tuple[int, ...] | list[int],
    tols: FacetTolerances | None = None,
) -> tuple[np.ndarray, np.ndarray] | None:
    """Unit normal (u, v) of the hyperplane through the subset's data
    rays, or None when the rows are rank-deficient or the normal is not
    strictly positive.  Absence is a value, not an error."""
    tols = tols or FacetTolerances()
    subset = tuple(subset)
    d = ds.s + ds.m - 1
    if len(subset) != d:
        raise DataError(f"subset size {len(subset)} != s+m-1 = {d}")
    rows = np.empty((d, ds.s + ds.m))
    for i, j in enumerate(subset):
        rows[i, : ds.s] = ds.outputs[:, j]
        rows[i, ds.s:] = ds.inputs[:, j]
    _, sv, vh = np.linalg.svd(rows)
    if sv[-1] <= tols.rank_tol * sv[0]:
        return None
    normal = vh[-1]  # unit length; rows @ normal ~ 0
    u = normal[: ds.s]
    v = -normal[ds.s:]
    for comp in u:
        if comp != 0.0:
            if comp < 0.0:
                u = -u
                v = -v
            break
    if min(u.min(initial=np.inf), v.min(initial=np.inf)) <= tols.positivity_tol:
        return None
    return u, v


def _row_norms(ds: Dataset) -> np.ndarray:
    stacked = np.vstack([ds.outputs, ds.inputs])
    return np.sqrt(np.sum(stacked * stacked, axis=0))


def enumerate_facets(
    ds: Dataset,
    extremes: list[int] | tuple[int, ...],
    scope: str = "extremes",
    tols: FacetTolerances | None = None,
) -> FacetSet:
    """Enumerate every facet spanned by the extreme set.

    Facet ids are canonical: subsets are ordered lexicographically by
    their positions within the extreme list, so a pinned extreme list
    fixes the numbering.  Subsets sharing one hyperplane within tolerance
    collapse to the first subset; the union of coincident spanning sets
    is recorded as a regularity warning, not an error.
    """
    tols = tols or FacetTolerances()
    if scope not in ("extremes", "all"):
        raise DataError(f"support scope must be 'extremes' or 'all', got {scope!r}")
    extremes = tuple(int(e) for e in extremes)
    d = ds.s + ds.m - 1
    if len(extremes) < d:
        raise DataError(f"need at least s+m-1 = {d} extreme DMUs, got {len(extremes)}")
    support = extremes if scope == "extremes" else tuple(range(ds.n))
    norms = _row_norms(ds)

    found: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]] = []
    examined = 0
    for pos_subset in itertools.combinations(range(len(extremes)), d):
        examined += 1
        subset = tuple(extremes[p] for p in pos_subset)
        res = facet_normal(ds, subset, tols)
        if res is None:
            continue
        u, v = res
        supported = True
        for j in support:
            resid = (np.sum(u * ds.outputs[:, j]) - np.sum(v * ds.inputs[:, j])) / norms[j]
            if resid > tols.support_tol:
                supported = False
                break
        if supported:
            found.append((subset, u, v))

    # Deduplicate coincident hyperplanes (same unit normal).
    facets: list[Facet] = []
    warnings: list[str] = []
    kept: list[tuple[tuple[int, ...], np.ndarray, np.ndarray, set[int]]] = []
    for subset, u, v in found:
        nvec = np.concatenate([u, v])
        merged = False
        for prev in kept:
            pvec = np.concatenate([prev[1], prev[2]])
            if float(np.max(np.abs(nvec - pvec))) <= tols.dedup_tol:
                prev[3].update(subset)
                merged = True
                break
        if not merged:
            kept.append((subset, u, v, set(subset)))
    for fid, (subset, u, v, span_union) in enumerate(kept, start=1):
        if span_union != set(subset):
            names = ", ".join(ds.names[j] for j in sorted(span_union))
            warnings.append(
                f"regularity condition violated: DMUs {{{names}}} lie on one hyperplane "
                f"(facet {fid} keeps spanning set {tuple(ds.names[j] for j in sorted(subset))})"
            )
        u = u.copy()
        v = v.copy()
        u.flags.writeable = False
        v.flags.writeable = False
        facets.append(Facet(id=fid, members=tuple(sorted(subset)), u=u, v=v))
    return FacetSet(
        facets=tuple(facets),
        extremes=extremes,
        scope=scope,
        warnings=tuple(warnings),
        subsets_examined=examined,
    )


def facet_contains(
    facet: Facet,
    ds: Dataset,
    xbar: np.ndarray,
    y: np.ndarray,
    cfg: SolverConfig | None = None,
) -> bool:
    """True iff some lambda >= 0 over the spanning members reproduces
    (xbar, y) exactly: one LP feasibility check."""
    cfg = cfg or SolverConfig()
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if xbar.size != ds.m or y.size != ds.s:
        raise DataError(f"point dimensions ({xbar.size}, {y.size}) do not match dataset ({ds.m}, {ds.s})")
    cols = list(facet.members)
    k = len(cols)
    A = np.vstack([ds.inputs[:, cols], ds.outputs[:, cols]])
    b = np.concatenate([xbar, y])
    problem = LpProblem("min", np.zeros(k), A, ("=",) * (ds.m + ds.s), b)
    return solve_lp(problem, cfg).status == "optimal"


def verify_facet_set(ds: Dataset, fs: FacetSet, tols: FacetTolerances | None = None) -> dict:
    """Residual summary for reporting and invariant tests.

    Returns per-facet max |u@y_j - v@x_j| over members (span residual),
    max scaled support residual over the scope, and min normal component.
    """
    tols = tols or FacetTolerances()
    norms = _row_norms(ds)
    support = fs.extremes if fs.scope == "extremes" else tuple(range(ds.n))
    out = {}
    for f in fs.facets:
        span = max(
            abs(f.value(ds.outputs[:, j], ds.inputs[:, j])) / norms[j] for j in f.members
        )
        sup = max(
            f.value(ds.outputs[:, j], ds.inputs[:, j]) / norms[j] for j in support
        )
        out[f.id] = {
            "span_residual": span,
            "max_support_residual": sup,
            "min_normal_component": float(min(f.u.min(), f.v.min())),
        }
    return out


def envelope_violations(ds: Dataset, fs: FacetSet, tols: FacetTolerances | None = None) -> list[dict]:
    """DMUs lying outside some facet half-space (scaled residual above
    tolerance).  On a clean dataset this list is empty for scope=all and
    scope=extremes alike; a nonempty list under scope=extremes flags the
    kind of data anomaly that support checks over extremes cannot see."""
    tols = tols or FacetTolerances()
    norms = _row_norms(ds)
    out = []
    for j in range(ds.n):
        for f in fs.facets:
            resid = f.value(ds.outputs[:, j], ds.inputs[:, j]) / norms[j]
            if resid > tols.support_tol:
                out.append({"dmu": ds.names[j], "facet": f.id, "residual": float(resid)})
    return out
