"""Command-line entry point: build, query, bench, validate."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..ambit import ambit_from_dict
from ..builders import BUILDERS, BuildParams, build
from ..errors import InvalidInputError, InvalidStateError
from ..metrics import DISCRETE_METRICS, CountedMetric
from ..sprawl import io as sio
from ..sprawl import validate
from .bench import parse_index_specs, run_bench, run_query
from .data import load_dataset
from .oracle import agrees, oracle
from .report import emit_report, format_records, summarize
from .workload import AmbitQuery, KnnQuery, RangeQuery, make_workload

METRICS = ("l2", "l1", "euclidean", "manhattan", "levenshtein", "hamming")


def _metric(name: str) -> CountedMetric:
    return CountedMetric(name)


def _kind_for(metric: CountedMetric) -> str:
    return "strings" if metric.kind in DISCRETE_METRICS else "vectors"


def _params(args) -> BuildParams:
    return BuildParams(
        arity=args.arity, leaf_capacity=args.leaf_cap, pivot_count=args.pivots,
        shell_width=args.rho, seed=args.seed, heuristic=args.heuristic,
        laesa_mode=args.laesa_mode, piaesa_switch=args.piaesa_switch, tight=not args.loose,
    )


def _add_build_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--pivots", type=int, default=None, help="pivot count (laesa, aesa, pmtree)")
    p.add_argument("--rho", type=float, default=0.0, help="VP-forest shell half-width")
    p.add_argument("--leaf-cap", type=int, default=1)
    p.add_argument("--heuristic", choices=("lb_sum", "lb_max"), default="lb_sum")
    p.add_argument("--laesa-mode", choices=("eliminate", "discover"), default="eliminate")
    p.add_argument("--piaesa-switch", type=int, default=0)
    p.add_argument("--loose", action="store_true", help="VP-tree: use the split radius, not tight bounds")


def _parse_object(text: str, kind: str):
    if kind == "strings":
        return text
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise InvalidInputError(f"cannot parse query {text!r} as a vector") from None


def _read_spec(text: str) -> dict:
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"bad query spec: {e}") from None


def cmd_build(args) -> int:
    metric = _metric(args.metric)
    ds = load_dataset(args.data, kind=_kind_for(metric), seed=args.seed)
    g = build(args.index, ds.points, metric, _params(args))
    sio.save(g, args.out)
    print(f"built {args.index}: n={g.n} regions={len(g.regions)} build_distances={g.build_distances} -> {args.out}")
    return 0


def cmd_query(args) -> int:
    g = sio.load(args.input)
    metric = _metric(g.metric)
    kind = "strings" if g.payload_kind()[0] == "str" else "vectors"
    queries = []
    if args.mode == "ambit":
        if not args.query_spec:
            raise InvalidInputError("--mode ambit needs --query-spec")
        spec = _read_spec(args.query_spec)
        for item in spec if isinstance(spec, list) else [spec]:
            queries.append(AmbitQuery(ambit_from_dict(item)))
    else:
        if not args.query:
            raise InvalidInputError(f"--mode {args.mode} needs at least one --query")
        objs = [_parse_object(t, kind) for t in args.query]
        if args.mode == "range":
            if args.radius is None:
                raise InvalidInputError("--mode range needs --radius")
            queries = [RangeQuery(o, args.radius) for o in objs]
        else:
            queries = [KnnQuery(o, args.k) for o in objs]
    ok = True
    for i, q in enumerate(queries):
        m = metric.fresh()
        rep = run_query(g, m, q)
        out = {"query_id": i, "mode": q.mode, "results": [[u, d] for u, d in rep.results],
               "distance_count": rep.distance_count}
        if args.verify:
            out["correct"] = agrees(q, rep.results, oracle(g.payloads, metric.fresh(), q))
            ok &= out["correct"]
        print(json.dumps(out))
    return 0 if ok else 1


def cmd_bench(args) -> int:
    metric = _metric(args.metric)
    ds = load_dataset(args.data, kind=_kind_for(metric), seed=args.seed)
    specs = parse_index_specs(args.indexes, BuildParams(seed=args.seed))
    for s in specs:
        if s.kind not in BUILDERS:
            raise InvalidInputError(f"unknown index {s.kind!r}; choose from {sorted(BUILDERS)}")
    wl = make_workload(ds, metric, args.workload, seed=args.seed)
    records = list(run_bench(ds, metric, specs, wl, verify=args.verify))
    if args.report:
        summary = emit_report(records, args.report, args.format)
    else:
        sys.stdout.write(format_records(records, args.format))
        summary = summarize(records)
    for row in summary["rows"]:
        print(f"{row['builder']:>10}  queries={row['queries']}  mean={row['mean_distance_count']:.1f}  "
              f"median={row['median_distance_count']}  build={row['build_distances']}  "
              f"errors={row['errors']}  correct={row['correct']}", file=sys.stderr)
    bad = any(r.error is not None for r in records) or (args.verify and not all(r.correct for r in records))
    return 1 if bad else 0


def cmd_validate(args) -> int:
    g = sio.load(args.input)
    rep = validate(g, audit=True, metric=_metric(g.metric))
    for line in rep.lines():
        print(line)
    print(f"{'ok' if rep.passed else 'FAILED'}: {g.builder or 'graph'} n={g.n} regions={len(g.regions)} "
          f"audit_distances={rep.audit_distances}")
    return 0 if rep.passed else 1


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="metricsprawl", description="Metric indexes as sprawls of linear ambits.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build an index and save it")
    b.add_argument("--index", required=True, choices=sorted(BUILDERS))
    b.add_argument("--data", required=True, help="file path or generator spec such as 'uniform(2,1000)'")
    b.add_argument("--metric", choices=METRICS, default="l2")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    _add_build_flags(b)
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="run queries against a saved index")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--mode", choices=("range", "knn", "ambit"), required=True)
    q.add_argument("--radius", type=float)
    q.add_argument("-k", type=int, default=1)
    q.add_argument("--query", action="append", help="query object; vectors as comma-separated floats")
    q.add_argument("--query-spec", help="ambit as JSON {foci, coeffs, radii}, or @file")
    q.add_argument("--verify", action="store_true")
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("bench", help="build indexes and count distances over a workload")
    r.add_argument("--indexes", required=True, help="e.g. 'vp,gnat:arity=4,laesa:pivots=16:mode=discover'")
    r.add_argument("--data", required=True)
    r.add_argument("--metric", choices=METRICS, default="l2")
    r.add_argument("--workload", default="range=100,knn=50")
    r.add_argument("--verify", action="store_true")
    r.add_argument("--report")
    r.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_bench)

    v = sub.add_parser("validate", help="structural checks and containment audit of a saved index")
    v.add_argument("--in", dest="input", required=True)
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, InvalidStateError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
