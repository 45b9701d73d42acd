"""facet-bench command line.

Subcommands mirror the four-step pipeline plus the scenario tools:

  validate    check a dataset file against every invariant
  extremes    run the extreme-efficiency test per DMU
  facets      enumerate the full-dimensional efficient facets
  partition   group maximal-participation DMUs by exact facet subset
  efficiency  per-DMU efficiency table (robust / closest / russell)
  scenario    two-stage revenue analysis under a price scenario
  coverage    seeded Monte-Carlo strategy coverage counts
  report      full pipeline report (json or csv projection)

Exit codes: 0 success, 1 data/input error, 2 internal or solver error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .dataset import load_dataset, parse_dataset, validate_dataset
from .errors import DataError, FacetBenchError, SolverError
from .facets import FacetTolerances, enumerate_facets
from .lp import SolverConfig
from .measures import extreme_set
from .partition import partition_export, partition_robust
from .profiles import get_profile
from .report import build_report, emit, facet_export
from .robust import RobustConfig
from .scenario import (
    check_assumptions,
    facet_contains,
    facet_optimum,
    global_optimum,
    load_scenario,
    price_at,
    revenue,
    simulate_coverage,
    uniqueness_diagnostics,
    withstand_capacity,
)


def _read_extremes_file(path: str) -> tuple[str, ...]:
    p = Path(path)
    if not p.exists():
        raise DataError(f"no such file: {path}")
    names = [
        line.strip() for line in p.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not names:
        raise DataError(f"{path}: no DMU names")
    return tuple(names)


def _parse_strategies(spec: str) -> list[tuple[int, ...]]:
    out = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(tuple(int(tok) for tok in part.split(",")))
        except ValueError:
            raise DataError(f"bad strategy spec {part!r}: expected comma-separated facet ids") from None
    if not out:
        raise DataError("empty strategy spec")
    return out


def _parse_xbar(spec: str | None, m: int) -> np.ndarray:
    if spec is None:
        return np.ones(m)
    try:
        vals = [float(tok) for tok in spec.split(",")]
    except ValueError:
        raise DataError(f"bad --xbar {spec!r}: expected comma-separated numbers") from None
    if len(vals) != m:
        raise DataError(f"--xbar has {len(vals)} components, dataset has m={m} inputs")
    return np.array(vals)


def _settings(args) -> tuple[tuple[str, ...] | None, str, str]:
    """(extreme override, support scope, aggregation) after profile merge."""
    override = None
    scope = None
    aggregation = None
    if getattr(args, "profile", None):
        prof = get_profile(args.profile)
        override = prof["extremes"]
        scope = prof["support_scope"]
        aggregation = prof["aggregation"]
    if getattr(args, "extremes", None):
        override = _read_extremes_file(args.extremes)
    if getattr(args, "support_scope", None):
        scope = args.support_scope
    if getattr(args, "aggregation", None):
        aggregation = args.aggregation
    return override, scope or "extremes", aggregation or "table4-max"


def _emit_payload(payload: dict, args) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise DataError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _pipeline(args):
    ds = load_dataset(args.data)
    override, scope, aggregation = _settings(args)
    cfg = RobustConfig(solver=SolverConfig(), aggregation=aggregation)
    tols = FacetTolerances()
    ext = extreme_set(ds, override, cfg.solver)
    fs = enumerate_facets(ds, ext.indices, scope, tols)
    return ds, ext, fs, cfg, tols, scope


def cmd_validate(args) -> int:
    ds = parse_dataset(args.data)
    violations = validate_dataset(ds)
    payload = {
        "data": args.data,
        "valid": not violations,
        "violations": [
            {"rule": v.rule, "dmu": v.dmu, "dimension": v.dimension, "message": v.message}
            for v in violations
        ],
    }
    _emit_payload(payload, args)
    return 1 if violations else 0


def cmd_extremes(args) -> int:
    ds = load_dataset(args.data)
    override, _, _ = _settings(args)
    ext = extreme_set(ds, override, SolverConfig())
    payload = {
        "data": args.data,
        "effective": [ds.names[d] for d in ext.indices],
        "computed": [ds.names[d] for d in ext.computed],
        "pinned": ext.pinned,
        "discrepancy": ext.discrepancy_detail(ds),
        "lambda0": {ds.names[d]: v for d, v in sorted(ext.lambda0.items())},
    }
    _emit_payload(payload, args)
    return 0


def cmd_facets(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    payload = {
        "data": args.data,
        "support_scope": scope,
        "extremes": [ds.names[d] for d in ext.indices],
        "facets": facet_export(ds, fs),
        "subsets_examined": fs.subsets_examined,
        "warnings": list(fs.warnings),
    }
    _emit_payload(payload, args)
    return 0


def cmd_partition(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    part = partition_robust(fs)
    payload = {"data": args.data, "partition": partition_export(ds, part)}
    _emit_payload(payload, args)
    return 0


def cmd_efficiency(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    part = partition_robust(fs)
    report = build_report(ds, ext, fs, part, cfg, tols, data_path=args.data, profile=args.profile)
    wanted = args.measure
    if wanted != "all":
        keep = {"robust": ["robust"], "closest": ["closest"], "russell": ["russell"]}[wanted]
        for row in report.payload["results"]:
            for key in ("robust", "closest", "russell"):
                if key not in keep:
                    del row[key]
    text = emit(report, args.format, args.out) if wanted == "all" else None
    if text is None:
        _emit_payload({"results": report.payload["results"]}, args)
    elif not args.out:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    part = partition_robust(fs)
    report = build_report(ds, ext, fs, part, cfg, tols, data_path=args.data, profile=args.profile)
    text = emit(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 0


def cmd_scenario(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    sc = load_scenario(args.prices)
    if sc.s != ds.s:
        raise DataError(f"scenario has {sc.s} outputs, dataset has {ds.s}")
    d0 = args.delta0
    d1 = args.delta if args.delta is not None else args.delta1
    if args.xbar is not None:
        xbar = _parse_xbar(args.xbar, ds.m)
    elif args.target:
        xbar = ds.inputs[:, ds.index(args.target)]
    else:
        xbar = np.ones(ds.m)
    payload = {
        "data": args.data,
        "xbar": [float(v) for v in xbar],
        "prices": {
            "at_delta0": [float(v) for v in price_at(sc, d0)],
            "at_delta1": [float(v) for v in price_at(sc, d1)],
        },
        "facet_optima_delta1": [],
        "global": {},
    }
    for f in fs.facets:
        opt = facet_optimum(ds, f, xbar, sc, d1, cfg.solver)
        diag = uniqueness_diagnostics(ds, f, sc, d1)
        payload["facet_optima_delta1"].append({
            "facet": f.id, "value": opt.value,
            "outputs": [float(v) for v in opt.outputs],
            "uniqueness": diag.kind,
        })
    for tag, dd in (("delta0", d0), ("delta1", d1)):
        best, owners = global_optimum(ds, fs, xbar, sc, dd, cfg.solver)
        payload["global"][tag] = {
            "value": best.value, "outputs": [float(v) for v in best.outputs],
            "owning_facets": list(owners),
        }
    if args.target:
        o = ds.index(args.target)
        yhat = ds.outputs[:, o]
        xbar_t = xbar
        rep = check_assumptions(ds, fs, sc, yhat, xbar_t, d0, d1, cfg.solver)
        payload["target"] = {
            "dmu": args.target,
            "revenue_delta0": revenue(yhat, sc, d0),
            "revenue_delta1": revenue(yhat, sc, d1),
            "assumptions": {
                "assumption1_holds": rep.assumption1_holds,
                "assumption2_holds": rep.assumption2_holds,
                "revenue_violations": list(rep.revenue_violations),
                "recovery_entries": list(rep.recovery_entries),
            },
            "withstand": [],
        }
        for f in fs.facets:
            if facet_contains(f, ds, xbar_t, yhat, cfg.solver):
                wr = withstand_capacity(ds, f, yhat, xbar_t, sc, d0, d1, cfg.solver)
                payload["target"]["withstand"].append({
                    "facet": f.id, "wr": wr.wr, "bound": wr.bound,
                    "within_bound": wr.within_bound,
                })
    _emit_payload(payload, args)
    return 0


def cmd_coverage(args) -> int:
    ds, ext, fs, cfg, tols, scope = _pipeline(args)
    xbar = _parse_xbar(args.xbar, ds.m)
    if args.strategies:
        strategies = _parse_strategies(args.strategies)
    else:
        strategies = [(fid,) for fid in fs.ids()] + [tuple(fs.ids())]
    rep = simulate_coverage(ds, fs, strategies, xbar, args.trials, args.seed)
    _emit_payload(rep.to_payload(), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facet-bench",
        description="DEA benchmarking against robust and closest facet targets",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, profile=True):
        p.add_argument("--data", required=True, help="dataset CSV (see FORMATS.md)")
        p.add_argument("--extremes", help="file pinning the extreme set, one DMU name per line")
        p.add_argument("--support-scope", choices=["extremes", "all"], dest="support_scope")
        p.add_argument("--out", help="write output to this path instead of stdout")
        if profile:
            p.add_argument("--profile", help="named settings bundle (paper-985)")

    p = sub.add_parser("validate", help="check a dataset file")
    p.add_argument("--data", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_validate, profile=None)

    p = sub.add_parser("extremes", help="extreme-efficiency test per DMU")
    add_common(p)
    p.set_defaults(fn=cmd_extremes)

    p = sub.add_parser("facets", help="enumerate efficient facets")
    add_common(p)
    p.set_defaults(fn=cmd_facets)

    p = sub.add_parser("partition", help="robust-point partition")
    add_common(p)
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("efficiency", help="per-DMU efficiency table")
    add_common(p)
    p.add_argument("--measure", choices=["robust", "closest", "russell", "all"], default="all")
    p.add_argument("--aggregation", choices=["table4-max", "paper-min"])
    p.add_argument("--format", choices=["json", "csv"], default="json",
                   help="csv applies to the full table (--measure all); filtered output is json")
    p.set_defaults(fn=cmd_efficiency)

    p = sub.add_parser("scenario", help="two-stage revenue analysis")
    add_common(p)
    p.add_argument("--prices", required=True, help="price scenario JSON")
    p.add_argument("--delta0", type=float, default=0.0, help="pre-risk parameter")
    p.add_argument("--delta1", type=float, default=1.0, help="post-risk parameter")
    p.add_argument("--delta", type=float, help="shorthand for --delta1")
    p.add_argument("--target", help="DMU whose point anchors the analysis")
    p.add_argument("--xbar", help="fixed input vector, comma-separated (default: target's inputs, else ones)")
    p.set_defaults(fn=cmd_scenario, aggregation=None)

    p = sub.add_parser("coverage", help="Monte-Carlo strategy coverage")
    add_common(p)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategies", help="semicolon-separated facet-id groups, e.g. '1;2;1,2'")
    p.add_argument("--xbar", help="fixed input vector, comma-separated (default: ones)")
    p.set_defaults(fn=cmd_coverage, aggregation=None)

    p = sub.add_parser("report", help="full pipeline report")
    add_common(p)
    p.add_argument("--aggregation", choices=["table4-max", "paper-min"])
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SolverError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except FacetBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"unexpected internal error: {exc!r}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
