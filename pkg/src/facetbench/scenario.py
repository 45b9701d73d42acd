"""Risk-scenario revenue calculus over the facet configuration.

Prices vary with a scalar risk parameter delta, either as affine
functions per output or as a lookup table.  Revenue is the price-weighted
output sum; the interesting objects are the per-facet and global optimal
revenue points under a fixed input vector, the capacity to recover
revenue by moving within one facet (withstand capacity), and a seeded
Monte-Carlo check that multi-facet strategies cover at least as many
sampled price draws as any of their sub-strategies.

Sampling is counter-based: trial i draws from Philox(key=seed) advanced
to counter i * 2**64, so any subset of trials can be reproduced (or run
concurrently) without generating the rest of the stream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import Dataset
from .errors import DataError, FacetInfeasibleError, SolverError
from .facets import Facet, FacetSet, facet_contains
from .lp import LpProblem, SolverConfig, solve_lp

OWNERSHIP_RTOL = 1e-9
PARALLEL_TOL = 1e-9
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class PriceScenario:
    """Per-output price functions p_i(delta) on a declared domain.

    Affine form: p_i(delta) = base_i + slope_i * delta on [domain_lo,
    domain_hi]; positivity over the interval is endpoint-determined and
    checked at construction.  Table form: an explicit delta -> price
    mapping, each entry checked directly.
    """

    output_names: tuple[str, ...]
    bases: np.ndarray | None = None
    slopes: np.ndarray | None = None
    domain: tuple[float, float] | None = None
    table: dict[float, np.ndarray] | None = None

    def __post_init__(self):
        if (self.table is None) == (self.bases is None):
            raise DataError("scenario must be affine (bases/slopes/domain) or a table, not both")
        if self.table is None:
            bases = np.asarray(self.bases, dtype=float)
            slopes = np.asarray(self.slopes, dtype=float)
            if bases.shape != slopes.shape or bases.ndim != 1:
                raise DataError("bases and slopes must be equal-length vectors")
            if self.domain is None or self.domain[0] > self.domain[1]:
                raise DataError("affine scenario needs a domain [lo, hi] with lo <= hi")
            for endpoint in self.domain:
                p = bases + slopes * endpoint
                if np.any(p <= 0):
                    bad = int(np.argmin(p))
                    raise DataError(
                        f"price of output {self.output_names[bad]!r} is {p[bad]!r} "
                        f"at delta={endpoint}: prices must stay strictly positive on the domain"
                    )
            object.__setattr__(self, "bases", bases)
            object.__setattr__(self, "slopes", slopes)
        else:
            table = {float(k): np.asarray(v, dtype=float) for k, v in self.table.items()}
            if not table:
                raise DataError("empty price table")
            for d, p in table.items():
                if p.shape != (len(self.output_names),):
                    raise DataError(f"price vector at delta={d} has wrong length")
                if np.any(p <= 0):
                    raise DataError(f"nonpositive price at delta={d}")
            object.__setattr__(self, "table", table)

    @property
    def s(self) -> int:
        return len(self.output_names)


def price_at(sc: PriceScenario, delta: float) -> np.ndarray:
    """Evaluate the price vector; delta must lie in the domain."""
    delta = float(delta)
    if sc.table is not None:
        if delta not in sc.table:
            raise DataError(f"delta={delta} not in the scenario table {sorted(sc.table)}")
        p = sc.table[delta]
    else:
        lo, hi = sc.domain
        if not (lo <= delta <= hi):
            raise DataError(f"delta={delta} outside the scenario domain [{lo}, {hi}]")
        p = sc.bases + sc.slopes * delta
    if np.any(p <= 0):
        raise DataError(f"scenario invariant breach: nonpositive price at delta={delta}")
    return p


def revenue(y: np.ndarray, sc: PriceScenario, delta: float) -> float:
    """Price-weighted output value P(delta) @ y."""
    y = np.asarray(y, dtype=float)
    p = price_at(sc, delta)
    if y.shape != p.shape:
        raise DataError(f"output vector length {y.size} != {p.size} prices")
    return float(np.sum(p * y))


def load_scenario(path: str | Path) -> PriceScenario:
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON: {exc}") from None
    if "table" in payload:
        table = {float(k): np.asarray(v, dtype=float) for k, v in payload["table"].items()}
        width = len(next(iter(table.values())))
        names = tuple(payload.get("outputs", [f"y{r+1}" for r in range(width)]))
        return PriceScenario(output_names=names, table=table)
    try:
        outputs = payload["outputs"]
        lo, hi = payload["delta_domain"]
        names = tuple(o["name"] for o in outputs)
        bases = [float(o["base"]) for o in outputs]
        slopes = [float(o.get("slope", 0.0)) for o in outputs]
    except (KeyError, TypeError) as exc:
        raise DataError(f"{path}: malformed scenario file ({exc})") from None
    return PriceScenario(
        output_names=names, bases=np.array(bases), slopes=np.array(slopes),
        domain=(float(lo), float(hi)),
    )


@dataclass(frozen=True)
class OptimalPoint:
    facet_id: int
    outputs: np.ndarray
    intensities: dict[int, float]     # dataset index -> lambda over members
    value: float
    uniqueness: str                   # unique | facet-degenerate | edge-degenerate


@dataclass(frozen=True)
class AssumptionReport:
    assumption1_holds: bool
    assumption2_holds: bool
    revenue_violations: tuple[dict, ...]   # per anchor-facet generator: risk raised revenue
    recovery_entries: tuple[dict, ...]     # per containing facet: bound check
    global_post_risk_optimum: float = float("nan")
    global_recovery_holds: bool = True     # global optimum <= pre-risk revenue

    def ok(self) -> bool:
        return self.assumption1_holds and self.assumption2_holds


def _optimum_for_prices(
    ds: Dataset, facet: Facet, xbar: np.ndarray, prices: np.ndarray, cfg: SolverConfig
) -> tuple[np.ndarray, np.ndarray, float, bool]:
    """(lambda, y, value, degenerate flag) of max prices@y on the facet."""
    cols = list(facet.members)
    Yf = ds.outputs[:, cols]
    Xf = ds.inputs[:, cols]
    c = -(prices @ Yf)
    sol = solve_lp(LpProblem("min", c, Xf, ("=",) * ds.m, xbar), cfg)
    if sol.status == "infeasible":
        raise FacetInfeasibleError(
            f"facet {facet.id} admits no point with input vector {xbar.tolist()}"
        )
    if sol.status != "optimal":
        raise SolverError(f"facet optimum LP reported {sol.status} on facet {facet.id}")
    lam = sol.x
    y = Yf @ lam
    return lam, y, float(np.sum(prices * y)), sol.degenerate_optimal_face


def _classify_uniqueness(facet: Facet, prices: np.ndarray, degenerate: bool) -> str:
    if not degenerate:
        return "unique"
    pu = prices / np.sqrt(np.sum(prices * prices))
    uu = facet.u / np.sqrt(np.sum(facet.u * facet.u))
    if float(np.max(np.abs(pu - uu))) <= PARALLEL_TOL:
        return "facet-degenerate"
    return "edge-degenerate"


def facet_optimum(
    ds: Dataset,
    facet: Facet,
    xbar: np.ndarray,
    sc: PriceScenario,
    delta: float,
    cfg: SolverConfig | None = None,
) -> OptimalPoint:
    """Revenue-maximal point of one facet under fixed inputs."""
    cfg = cfg or SolverConfig()
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    if xbar.size != ds.m:
        raise DataError(f"input vector length {xbar.size} != m = {ds.m}")
    prices = price_at(sc, delta)
    lam, y, value, degen = _optimum_for_prices(ds, facet, xbar, prices, cfg)
    return OptimalPoint(
        facet_id=facet.id,
        outputs=y,
        intensities={d: float(l) for d, l in zip(facet.members, lam)},
        value=value,
        uniqueness=_classify_uniqueness(facet, prices, degen),
    )


def global_optimum(
    ds: Dataset,
    facets: FacetSet,
    xbar: np.ndarray,
    sc: PriceScenario,
    delta: float,
    cfg: SolverConfig | None = None,
) -> tuple[OptimalPoint, tuple[int, ...]]:
    """Best revenue over the whole facet configuration plus every facet
    attaining it within tolerance (the ownership set)."""
    cfg = cfg or SolverConfig()
    points: list[OptimalPoint] = []
    for f in facets.facets:
        try:
            points.append(facet_optimum(ds, f, xbar, sc, delta, cfg))
        except FacetInfeasibleError:
            continue
    if not points:
        raise FacetInfeasibleError(
            f"no facet admits the input vector {np.asarray(xbar, dtype=float).tolist()}"
        )
    best_value = max(p.value for p in points)
    owners = tuple(
        p.facet_id for p in points
        if p.value >= best_value - OWNERSHIP_RTOL * max(1.0, abs(best_value))
    )
    best = next(p for p in points if p.value == best_value)
    return best, owners


@dataclass(frozen=True)
class WithstandResult:
    wr: float
    bound: float
    within_bound: bool
    facet_optimum_value: float


def withstand_capacity(
    ds: Dataset,
    facet: Facet,
    yhat: np.ndarray,
    xbar: np.ndarray,
    sc: PriceScenario,
    delta0: float,
    delta1: float,
    cfg: SolverConfig | None = None,
) -> WithstandResult:
    """Revenue recoverable by within-facet substitution after the shock,
    against the pre/post revenue gap that bounds it."""
    cfg = cfg or SolverConfig()
    yhat = np.asarray(yhat, dtype=float)
    xbar = np.asarray(xbar, dtype=float)
    if not facet_contains(facet, ds, xbar, yhat, cfg):
        raise DataError(f"target point is not on facet {facet.id}")
    opt1 = facet_optimum(ds, facet, xbar, sc, delta1, cfg)
    r_hat0 = revenue(yhat, sc, delta0)
    r_hat1 = revenue(yhat, sc, delta1)
    wr = opt1.value - r_hat1
    bound = r_hat0 - r_hat1
    return WithstandResult(
        wr=wr, bound=bound,
        within_bound=wr <= bound + 1e-9 * max(1.0, abs(bound)),
        facet_optimum_value=opt1.value,
    )


def check_assumptions(
    ds: Dataset,
    facets: FacetSet,
    sc: PriceScenario,
    yhat: np.ndarray,
    xbar: np.ndarray,
    delta0: float,
    delta1: float,
    cfg: SolverConfig | None = None,
) -> AssumptionReport:
    """Verify the two revenue assumptions for a two-stage (delta0,
    delta1) analysis anchored at the point yhat.

    Both assumptions are anchored to the facet(s) containing yhat:
    revenue monotonicity is linear in outputs, so holding at the anchor
    facet's generators implies it on the whole facet cone; recovery
    boundedness is checked directly per containing facet.  The report
    also carries the global post-risk optimum so the derived claim
    (global recovery never beats the pre-risk revenue) is visible even
    for scenarios where other facets gain value under risk.
    """
    cfg = cfg or SolverConfig()
    yhat = np.asarray(yhat, dtype=float)
    xbar = np.asarray(xbar, dtype=float)
    containing = [f for f in facets.facets if facet_contains(f, ds, xbar, yhat, cfg)]
    if not containing:
        raise DataError("target point lies on no facet; assumptions are anchored to a facet point")
    violations = []
    seen: set[int] = set()
    for f in containing:
        for j in f.members:
            if j in seen:
                continue
            seen.add(j)
            y_j = ds.outputs[:, j]
            r0 = revenue(y_j, sc, delta0)
            r1 = revenue(y_j, sc, delta1)
            if r1 > r0 + 1e-9 * max(1.0, abs(r0)):
                violations.append(
                    {"facet": f.id, "dmu": ds.names[j], "revenue_before": r0, "revenue_after": r1}
                )
    r_hat0 = revenue(yhat, sc, delta0)
    entries = []
    for f in containing:
        opt1 = facet_optimum(ds, f, xbar, sc, delta1, cfg)
        holds = opt1.value <= r_hat0 + 1e-9 * max(1.0, abs(r_hat0))
        entries.append(
            {"facet": f.id, "post_risk_optimum": opt1.value, "pre_risk_revenue": r_hat0, "holds": holds}
        )
    best, _ = global_optimum(ds, facets, xbar, sc, delta1, cfg)
    return AssumptionReport(
        assumption1_holds=not violations,
        assumption2_holds=all(e["holds"] for e in entries),
        revenue_violations=tuple(violations),
        recovery_entries=tuple(entries),
        global_post_risk_optimum=best.value,
        global_recovery_holds=best.value <= r_hat0 + 1e-9 * max(1.0, abs(r_hat0)),
    )


@dataclass(frozen=True)
class Diagnosis:
    kind: str                          # unique | facet-degenerate | edge-degenerate
    detail: str
    tied_pairs: tuple[tuple[str, str], ...] = ()


def uniqueness_diagnostics(
    ds: Dataset,
    facet: Facet,
    sc: PriceScenario,
    delta: float,
) -> Diagnosis:
    """Classify how many revenue-optimal points the facet has.

    Prices parallel to the facet's output normal make the whole facet
    optimal; otherwise, with a single input, ties between scaled
    generators pin down degenerate edges exactly.  With several inputs
    the generator-difference test is used directly (the optimal face then
    depends on the fixed input vector, which this diagnosis abstracts
    over).
    """
    prices = price_at(sc, delta)
    pu = prices / np.sqrt(np.sum(prices * prices))
    uu = facet.u / np.sqrt(np.sum(facet.u * facet.u))
    if float(np.max(np.abs(pu - uu))) <= PARALLEL_TOL:
        return Diagnosis(
            kind="facet-degenerate",
            detail=f"prices are parallel to facet {facet.id}'s output normal: every point ties",
        )
    cols = list(facet.members)
    if ds.m == 1:
        # Per unit input the candidate vertices are the scaled generators;
        # the scale cancels in both the argmax and the tie test.
        values = np.array([
            float(np.sum(prices * ds.outputs[:, j])) / float(ds.inputs[0, j]) for j in cols
        ])
    else:
        values = np.array([float(np.sum(prices * ds.outputs[:, j])) for j in cols])
    best = float(np.max(values))
    tied = [cols[i] for i in range(len(cols)) if values[i] >= best - TIE_RTOL * max(1.0, abs(best))]
    if len(tied) > 1:
        pairs = tuple(
            (ds.names[a], ds.names[b]) for i, a in enumerate(tied) for b in tied[i + 1:]
        )
        return Diagnosis(
            kind="edge-degenerate",
            detail="prices are orthogonal to a generator difference: tie along an edge",
            tied_pairs=pairs,
        )
    return Diagnosis(kind="unique", detail=f"unique optimal vertex at {ds.names[tied[0]]}")


@dataclass(frozen=True)
class PriceSampler:
    """Independent uniform prices on [low, high], one counter-based
    stream per trial: draw i depends only on (seed, i)."""

    low: float = 0.1
    high: float = 10.0

    def __post_init__(self):
        if not (0.0 < self.low < self.high):
            raise DataError("sampler needs 0 < low < high (prices stay positive)")

    def draw(self, seed: int, trial: int, s: int) -> np.ndarray:
        gen = np.random.Generator(np.random.Philox(key=seed, counter=trial << 64))
        return gen.uniform(self.low, self.high, size=s)

    def describe(self) -> dict:
        return {"law": "uniform", "low": self.low, "high": self.high, "stream": "philox-counter"}


@dataclass(frozen=True)
class CoverageReport:
    trials: int
    seed: int
    xbar: tuple[float, ...]
    sampler: dict
    facet_ids: tuple[int, ...]
    facet_counts: dict[int, int]                     # |A_k| per facet
    strategies: tuple[tuple[int, ...], ...]
    strategy_counts: tuple[int, ...]                 # |union of A_k over the strategy|
    incidence: np.ndarray                            # trials x facets, bool
    containment_checks: tuple[dict, ...]

    def to_payload(self) -> dict:
        """JSON-ready summary (counts and seed; the incidence matrix is
        kept in memory for exact set checks, not exported)."""
        return {
            "trials": self.trials,
            "seed": self.seed,
            "xbar": list(self.xbar),
            "sampler": self.sampler,
            "facet_counts": {str(k): v for k, v in sorted(self.facet_counts.items())},
            "strategies": [
                {"facet_ids": list(kset), "count": count, "frequency": count / self.trials}
                for kset, count in zip(self.strategies, self.strategy_counts)
            ],
            "containment_checks": list(self.containment_checks),
        }


def simulate_coverage(
    ds: Dataset,
    facets: FacetSet,
    strategies: list[set[int]] | list[tuple[int, ...]],
    xbar: np.ndarray,
    trials: int,
    seed: int,
    sampler: PriceSampler | None = None,
    cfg: SolverConfig | None = None,
) -> CoverageReport:
    """Sample price vectors and record which facets own each global
    optimum.  Counts are exact per-sample set sizes; sampled frequencies
    are descriptive only (no distributional claim is attached).  The
    containment inequalities of the strategy lattice are verified sample
    by sample, never via the frequencies.
    """
    cfg = cfg or SolverConfig()
    sampler = sampler or PriceSampler()
    if not facets.facets:
        raise DataError("coverage simulation needs a nonempty facet set")
    if trials < 1:
        raise DataError("trials must be >= 1")
    if not strategies:
        raise DataError("at least one strategy (set of facet ids) required")
    xbar = np.asarray(xbar, dtype=float).reshape(-1)
    fids = facets.ids()
    col_of = {fid: i for i, fid in enumerate(fids)}
    strategy_sets = []
    for strat in strategies:
        kset = tuple(sorted(set(int(k) for k in strat)))
        unknown = [k for k in kset if k not in col_of]
        if unknown:
            raise DataError(f"strategy names unknown facet ids {unknown}")
        strategy_sets.append(kset)

    usable: list[tuple[int, Facet]] = []
    for f in facets.facets:
        try:
            _optimum_for_prices(ds, f, xbar, np.ones(ds.s), cfg)
        except FacetInfeasibleError:
            continue
        usable.append((col_of[f.id], f))
    if not usable:
        raise FacetInfeasibleError(f"no facet admits the input vector {xbar.tolist()}")

    incidence = np.zeros((trials, len(fids)), dtype=bool)
    for i in range(trials):
        prices = sampler.draw(seed, i, ds.s)
        values = np.full(len(fids), -np.inf)
        for col, f in usable:
            _, _, val, _ = _optimum_for_prices(ds, f, xbar, prices, cfg)
            values[col] = val
        best = float(np.max(values))
        incidence[i] = values >= best - OWNERSHIP_RTOL * max(1.0, abs(best))

    facet_counts = {fid: int(incidence[:, col_of[fid]].sum()) for fid in fids}
    strategy_counts = []
    union_rows = []
    for kset in strategy_sets:
        cols = [col_of[k] for k in kset]
        rows = incidence[:, cols].any(axis=1)
        union_rows.append(rows)
        strategy_counts.append(int(rows.sum()))

    checks = []
    for a, (ka, rows_a) in enumerate(zip(strategy_sets, union_rows)):
        # union dominates every member, exactly, per sample
        for k in ka:
            member_rows = incidence[:, col_of[k]]
            if not bool(np.all(rows_a >= member_rows)):
                raise SolverError("per-sample union check failed (internal inconsistency)")
        for b, (kb, rows_b) in enumerate(zip(strategy_sets, union_rows)):
            if a == b or not set(ka) <= set(kb):
                continue
            subset_ok = bool(np.all(rows_b >= rows_a))
            if not subset_ok:
                raise SolverError("per-sample containment check failed (internal inconsistency)")
            checks.append(
                {
                    "k1": list(ka), "k2": list(kb),
                    "count_k1": int(rows_a.sum()), "count_k2": int(rows_b.sum()),
                    "per_sample_subset": True,
                }
            )

    incidence.flags.writeable = False
    return CoverageReport(
        trials=trials,
        seed=seed,
        xbar=tuple(float(v) for v in xbar),
        sampler=sampler.describe(),
        facet_ids=fids,
        facet_counts=facet_counts,
        strategies=tuple(strategy_sets),
        strategy_counts=tuple(strategy_counts),
        incidence=incidence,
        containment_checks=tuple(checks),
    )
