"""Command-line interface.

Subcommands: curvature, rewire, audit, verify-bound, stats, lcc.
Exit codes: 0 success, 1 bad input or usage, 2 internal error.  All output
files are deterministic for a fixed argument vector (stochastic commands
require --seed), so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .audit import audit_rewiring, export_condition_scatter, write_summary_json
from .curvature import CurvatureKind, as_kind, curvature_distribution, write_curvature_csv
from .errors import CurvkitError
from .graph import (
    attach_labels,
    double_star,
    largest_connected_component,
    load_edge_list,
    load_labels,
    read_id_map,
    save_edge_list,
    write_id_map,
)
from .mpnn import MpnnConfig, verify_bound
from .rewiring import SdrfParams, sdrf, write_trace
from .stats import (
    homophily,
    load_samples,
    saturation_analysis,
    spectral_gap,
    top_fraction_summary,
    write_saturation_csv,
)


class _UsageError(CurvkitError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message):
        raise _UsageError(message)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_graph(args):
    return load_edge_list(args.edges, directed_input=args.directed)


def _sdrf_params(args, kind: CurvatureKind) -> SdrfParams:
    if kind is not CurvatureKind.NONE:
        if args.seed is None:
            raise _UsageError("--seed is required for stochastic rewiring (kind != none)")
        if args.max_iter is None:
            raise _UsageError("--max-iter is required for rewiring")
        if args.tau is None:
            raise _UsageError("--tau is required for rewiring")
    return SdrfParams(
        kind=kind,
        max_iterations=args.max_iter if args.max_iter is not None else 1,
        tau=args.tau if args.tau is not None else 1.0,
        c_plus=args.cplus,
        seed=args.seed,
    )


def cmd_curvature(args) -> int:
    kind = as_kind(args.kind)
    graph, id_map = _load_graph(args)
    records = curvature_distribution(graph, kind)
    out = _out_dir(args)
    write_curvature_csv(records, out / "curvature.csv")
    write_id_map(id_map, out / "id_map.csv")
    print(f"curvature: {len(records)} edges ({kind.value}) -> {out / 'curvature.csv'}")
    return 0


def cmd_rewire(args) -> int:
    kind = as_kind(args.kind)
    graph, id_map = _load_graph(args)
    params = _sdrf_params(args, kind)
    rewired, trace = sdrf(graph, params, full_recompute=args.full_recompute)
    out = _out_dir(args)
    save_edge_list(rewired, out / "rewired_edges.txt")
    write_trace(trace, out / "trace.jsonl")
    write_id_map(id_map, out / "id_map.csv")
    added = sum(1 for s in trace if s.added is not None)
    removed = sum(1 for s in trace if s.removed is not None)
    print(
        f"rewire: {graph.edge_count} -> {rewired.edge_count} edges "
        f"({len(trace)} iterations, {added} additions, {removed} removals)"
    )
    if args.verbose:
        for s in trace:
            print(f"  iter {s.iteration}: target={s.target} added={s.added} removed={s.removed}")
    return 0


def cmd_audit(args) -> int:
    kind = as_kind(args.kind)
    graph, id_map = _load_graph(args)
    params = _sdrf_params(args, kind)
    summary, records = audit_rewiring(graph, params, full_recompute=args.full_recompute)
    out = _out_dir(args)
    dataset = Path(args.edges).stem
    write_summary_json(summary, dataset, kind.value, out / "summary.json")
    export_condition_scatter(records, out / "scatter.csv")
    write_id_map(id_map, out / "id_map.csv")
    print(
        f"audit: {summary.edges_rewired} edges rewired; "
        f"cond2 {summary.cond2_count} ({summary.cond2_percent:.1f}%), "
        f"cond2b {summary.cond2b_count} ({summary.cond2b_percent:.1f}%)"
    )
    return 0


def cmd_verify_bound(args) -> int:
    if (args.edges is None) == (args.double_star is None):
        raise _UsageError("give exactly one of --edges or --double-star")
    if args.double_star is not None:
        graph = double_star(args.double_star)
        edge = (0, 1) if args.edge is None else tuple(args.edge)
    else:
        graph, _ = _load_graph(args)
        if args.edge is None:
            raise _UsageError("--edge U V is required with --edges")
        edge = tuple(args.edge)
    depth = args.depth if args.depth is not None else args.l0 + 2
    cfg = MpnnConfig(
        depth=depth,
        alpha=args.alpha,
        beta=args.beta,
        l0=args.l0,
        nonlinearity=args.nonlinearity,
    )
    report = verify_bound(graph, edge, cfg)
    out = _out_dir(args)
    with open(out / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(
        f"verify-bound: lhs={report.lhs:.6g} rhs={report.rhs:.6g} "
        f"|Q|={report.q_size} 1/delta={report.one_over_delta:.6g} "
        f"pass={'true' if report.passed else 'false'}"
    )
    return 0


def cmd_stats(args) -> int:
    if args.samples is None and args.edges is None:
        raise _UsageError("stats needs --samples and/or --edges")
    result: dict = {}
    rows = None
    if args.samples is not None:
        samples = load_samples(args.samples)
        mean, std = top_fraction_summary(samples, args.fraction)
        count = len(samples.values)
        result["top_fraction"] = {
            "fraction": args.fraction,
            "count": math.ceil(args.fraction * count),
            "mean": mean,
            "std": std,
            "std_convention": "population",
        }
        checkpoints = [float(c) for c in args.checkpoints.split(",") if c.strip()]
        rows = saturation_analysis(samples, checkpoints)
    if args.edges is not None:
        graph, id_map = _load_graph(args)
        result["spectral_gap"] = spectral_gap(graph)
        if args.id_map is not None:
            # The edge file is a compacted artifact (e.g. from `lcc`); its
            # ids are compact ids of the given map, so translate them back
            # into the original vocabulary before any label lookup.
            alias = read_id_map(args.id_map)
            try:
                id_map = tuple(alias[i] for i in id_map)
            except IndexError:
                raise _UsageError(
                    f"--id-map {args.id_map} does not cover node ids in {args.edges}"
                ) from None
        if args.labels is not None:
            labeled = attach_labels(graph, id_map, load_labels(args.labels))
            result["homophily"] = homophily(labeled)
    out = _out_dir(args)
    with open(out / "stats.json", "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if rows is not None:
        write_saturation_csv(rows, out / "saturation.csv")
    keys = ", ".join(sorted(result))
    print(f"stats: wrote {keys} -> {out / 'stats.json'}")
    return 0


def cmd_lcc(args) -> int:
    graph, id_map = _load_graph(args)
    lcc, sub_map = largest_connected_component(graph)
    # Compose the two maps so ids refer back to the input file's vocabulary.
    composed = tuple(id_map[i] for i in sub_map)
    out = _out_dir(args)
    save_edge_list(lcc, out / "lcc_edges.txt")
    write_id_map(composed, out / "id_map.csv")
    print(f"lcc: kept {lcc.node_count}/{graph.node_count} nodes, {lcc.edge_count} edges")
    return 0


def _add_graph_arguments(sub, labels: bool = False):
    sub.add_argument("--edges", required=True, help="edge list file (u v per line, # comments)")
    sub.add_argument("--directed", action="store_true", help="treat lines as arcs and symmetrize")
    if labels:
        sub.add_argument("--labels", help="label file (node_id label per line)")


def _add_sdrf_arguments(sub):
    sub.add_argument("--kind", "--curvature", dest="kind", default="bfc",
                     choices=[k.value for k in CurvatureKind],
                     help="curvature measure (none = identity rewiring)")
    sub.add_argument("--max-iter", type=int, help="number of rewiring iterations")
    sub.add_argument("--tau", type=float, help="softmax temperature")
    sub.add_argument("--cplus", type=float, help="removal threshold (omit to disable removals)")
    sub.add_argument("--seed", type=int, help="RNG seed (required for stochastic runs)")
    sub.add_argument("--full-recompute", action="store_true",
                     help="rebuild all curvatures after each mutation (verification mode)")


def build_parser() -> _Parser:
    parser = _Parser(prog="curvkit", description=__doc__)
    parser.add_argument("--verbose", "-V", action="store_true", help="print extra detail")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("curvature", parents=[], help="per-edge curvature distribution")
    _add_graph_arguments(p)
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in CurvatureKind if k is not CurvatureKind.NONE])
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_curvature)

    p = subs.add_parser("rewire", help="SDRF rewiring")
    _add_graph_arguments(p)
    _add_sdrf_arguments(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rewire)

    p = subs.add_parser("audit", help="rewire and audit the targeted edges")
    _add_graph_arguments(p)
    _add_sdrf_arguments(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_audit)

    p = subs.add_parser("verify-bound", help="finite-difference check of the Jacobian bound")
    p.add_argument("--edges", help="edge list file")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--double-star", type=int, metavar="D",
                   help="use the built-in double star with hub degree D")
    p.add_argument("--edge", type=int, nargs=2, metavar=("I", "J"),
                   help="edge to verify (source first); default 0 1 for --double-star")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--nonlinearity", choices=["identity", "tanh"], default="identity")
    p.add_argument("--l0", type=int, default=0, help="layer at which the perturbation enters")
    p.add_argument("--depth", type=int, help="network depth (default l0 + 2)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_verify_bound)

    p = subs.add_parser("stats", help="sweep statistics and graph-level measures")
    p.add_argument("--edges", help="edge list file (enables spectral gap / homophily)")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--labels", help="label file (enables homophily)")
    p.add_argument("--id-map", help="id_map.csv of a previous run whose edge "
                   "output --edges points at; labels are then looked up by original id")
    p.add_argument("--samples", help="config_id,accuracy CSV (enables sweep summaries)")
    p.add_argument("--fraction", type=float, default=0.1, help="top fraction to summarize")
    p.add_argument("--checkpoints", default="0.33,0.66,1.0",
                   help="comma-separated saturation checkpoints in (0, 1]")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stats)

    p = subs.add_parser("lcc", help="largest connected component")
    _add_graph_arguments(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_lcc)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(parser.format_usage(), file=sys.stderr, end="")
        print(f"error: {err}", file=sys.stderr)
        return 1
    except SystemExit as exit_:  # --help and friends
        return int(exit_.code or 0)
    try:
        return args.func(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (CurvkitError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except Exception as err:  # pragma: no cover - internal failure path
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
