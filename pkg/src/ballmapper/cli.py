"""Command-line surface: ingest -> sweep -> build -> color -> compare ->
distance -> fraction -> ols -> residual-map -> export -> serve.

Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
2 usage error.  All artifacts are written deterministically, so identical
invocations produce byte-identical files.  The default seed is 0 and can be
overridden with the BALLMAPPER_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, regression
from .errors import BallMapperError, ParameterError
from .mapper import (
    Coloring,
    build,
    graph_from_json,
    graph_to_doc,
    doc_to_json,
    layout,
)
from .pointcloud import axis_stats, load_cloud
from .render import export_dot, export_svg

SEED_ENV = "BALLMAPPER_SEED"


@dataclass
class RunConfig:
    input_path: str
    axes: list[str]
    id_column: str
    attributes: list[str] = field(default_factory=list)
    epsilon: float | None = None
    epsilons: list[float] = field(default_factory=list)
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.epsilon is not None and self.epsilon <= 0:
            raise ParameterError("epsilon must be positive")
        for value in self.epsilons:
            if value <= 0:
                raise ParameterError("all sweep radii must be positive")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _comma_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _comma_floats(text: str) -> list[float]:
    return [float(item) for item in _comma_list(text)]


def _comma_ints(text: str) -> list[int]:
    return [int(item) for item in _comma_list(text)]


def _add_input_flags(parser: argparse.ArgumentParser, with_attrs: bool = True):
    parser.add_argument("--input", required=True, help="CSV file with header row")
    parser.add_argument(
        "--axes", required=True, type=_comma_list, help="comma-separated axis columns"
    )
    parser.add_argument("--id-col", required=True, help="row identifier column")
    if with_attrs:
        parser.add_argument(
            "--attr",
            type=_comma_list,
            default=[],
            help="comma-separated attribute columns carried through",
        )


def _load(args) -> tuple:
    with open(args.input, newline="", encoding="utf-8") as handle:
        report = load_cloud(
            handle, args.axes, args.id_col, getattr(args, "attr", [])
        )
    return report.cloud, report.dropped_rows


def _write(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")


def _float_cell(value: float) -> str:
    return repr(float(value))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballmapper", description="ball-mapper workbench"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load a CSV and report axis statistics")
    _add_input_flags(p)
    p.add_argument("--out", help="write axis stats CSV here")

    p = sub.add_parser("sweep", help="rebuild across a radius grid")
    _add_input_flags(p)
    p.add_argument("--epsilons", required=True, type=_comma_floats)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="sweep CSV path")

    p = sub.add_parser("build", help="build a graph and write canonical JSON")
    _add_input_flags(p)
    p.add_argument("--epsilon", required=True, type=float)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="graph JSON path")

    p = sub.add_parser("color", help="color a graph by an attribute")
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--by", required=True, help="attribute column to aggregate")
    p.add_argument("--aggregator", choices=["mean", "sd"], default="mean")
    p.add_argument("--out", required=True, help="graph JSON with colorings")

    p = sub.add_parser("compare", help="contrast two ball groups")
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--group-a", required=True, type=_comma_ints)
    p.add_argument("--group-b", required=True, type=_comma_ints)
    p.add_argument("--out", required=True, help="report CSV path")
    p.add_argument("--json-out", help="optional report JSON path")

    p = sub.add_parser("distance", help="color by distance to target balls")
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--targets", required=True, type=_comma_ints)
    p.add_argument("--out", required=True, help="graph JSON with colorings")

    p = sub.add_parser("fraction", help="color by attribute-value membership share")
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--by", required=True, help="attribute column holding labels")
    p.add_argument("--value", required=True, help="label counted as true")
    p.add_argument("--out", required=True, help="graph JSON with colorings")

    p = sub.add_parser("ols", help="fit outcome ~ axes and write the table")
    _add_input_flags(p)
    p.add_argument("--outcome", required=True, help="numeric attribute to fit")
    p.add_argument("--out", required=True, help="coefficient CSV path")
    p.add_argument("--residuals-out", help="per-row residual CSV path")

    p = sub.add_parser(
        "residual-map", help="color by share of |residual| above thresholds"
    )
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument(
        "--regressors",
        type=_comma_list,
        default=None,
        help="model columns (default: the graph axes)",
    )
    p.add_argument("--thresholds", required=True, type=_comma_floats)
    p.add_argument("--out", required=True, help="graph JSON with colorings")

    p = sub.add_parser("export", help="render a graph to DOT and/or SVG")
    _add_input_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", help="label of an embedded coloring to use")
    p.add_argument("--dot")
    p.add_argument("--svg")
    p.add_argument("--layout-seed", type=int, default=None)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)

    return parser


def _seed(args) -> int:
    return args.seed if getattr(args, "seed", None) is not None else _default_seed()


def _config(args) -> RunConfig:
    return RunConfig(
        input_path=args.input,
        axes=list(args.axes),
        id_column=args.id_col,
        attributes=list(getattr(args, "attr", [])),
        epsilon=getattr(args, "epsilon", None),
        epsilons=list(getattr(args, "epsilons", []) or []),
        seed=_seed(args),
        out=getattr(args, "out", None),
    )


def _load_graph(args, cloud):
    text = Path(args.graph).read_text(encoding="utf-8")
    doc = json.loads(text)
    return graph_from_doc_with_colorings(doc, cloud)


def graph_from_doc_with_colorings(doc, cloud):
    graph = graph_from_json(json.dumps(doc), cloud)
    return graph, doc.get("colorings", {})


def _coloring_doc(coloring) -> dict:
    return {str(k): v for k, v in sorted(coloring.values.items())}


def _write_colored_graph(args, cloud, graph, existing, new_colorings):
    doc = graph_to_doc(graph, cloud)
    merged = dict(existing)
    for coloring in new_colorings:
        merged[coloring.label] = _coloring_doc(coloring)
    if merged:
        doc["colorings"] = merged
    _write(args.out, doc_to_json(doc))


def _cmd_ingest(args) -> int:
    cloud, dropped = _load(args)
    print(f"rows={cloud.n_rows} axes={cloud.n_axes} dropped={dropped}")
    stats = axis_stats(cloud)
    if args.out:
        lines = ["axis,mean,sd,min,max"]
        for s in stats:
            lines.append(
                f"{s.axis_name},{_float_cell(s.mean)},{_float_cell(s.sd)},"
                f"{_float_cell(s.min)},{_float_cell(s.max)}"
            )
        _write(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    config = _config(args)
    cloud, _ = _load(args)
    rows = analysis.radius_sweep(cloud, config.epsilons, config.seed)
    lines = ["epsilon,balls,size_mean,size_sd,edges_per_ball"]
    for row in rows:
        lines.append(
            f"{_float_cell(row.epsilon)},{row.ball_count},"
            f"{_float_cell(row.size_mean)},{_float_cell(row.size_sd)},"
            f"{_float_cell(row.edges_per_ball)}"
        )
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_build(args) -> int:
    config = _config(args)
    cloud, dropped = _load(args)
    graph = build(cloud, config.epsilon, config.seed)
    _write(config.out, doc_to_json(graph_to_doc(graph, cloud)))
    print(
        f"balls={len(graph.balls)} edges={len(graph.edges)} dropped_rows={dropped}"
    )
    return 0


def _cmd_color(args) -> int:
    cloud, _ = _load(args)
    graph, existing = _load_graph(args, cloud)
    values = cloud.numeric_attribute(args.by)
    coloring = analysis.color_by(
        graph, values.tolist(), args.aggregator, label=f"{args.by}_{args.aggregator}"
    )
    _write_colored_graph(args, cloud, graph, existing, [coloring])
    return 0


def _cmd_compare(args) -> int:
    cloud, _ = _load(args)
    graph, _colorings = _load_graph(args, cloud)
    analysis.validate_ball_ids(graph, args.group_a + args.group_b)
    report = analysis.compare_groups(graph, cloud, args.group_a, args.group_b)
    lines = ["axis,mean_a,mean_b,diff,std_diff"]
    for row in report.rows:
        lines.append(
            f"{row.axis},{_float_cell(row.mean_a)},{_float_cell(row.mean_b)},"
            f"{_float_cell(row.diff)},{_float_cell(row.std_diff)}"
        )
    _write(args.out, "\n".join(lines) + "\n")
    if args.json_out:
        doc = {
            "group_a": list(report.group_a_balls),
            "group_b": list(report.group_b_balls),
            "size_a": report.size_a,
            "size_b": report.size_b,
            "rows": [
                {
                    "axis": row.axis,
                    "mean_a": row.mean_a,
                    "mean_b": row.mean_b,
                    "diff": row.diff,
                    "std_diff": row.std_diff,
                }
                for row in report.rows
            ],
        }
        _write(args.json_out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    print(f"size_a={report.size_a} size_b={report.size_b}")
    return 0


def _cmd_distance(args) -> int:
    cloud, _ = _load(args)
    graph, existing = _load_graph(args, cloud)
    analysis.validate_ball_ids(graph, args.targets)
    label = "dist_to_" + "_".join(str(b) for b in args.targets)
    coloring = analysis.distance_coloring(graph, cloud, args.targets, label=label)
    _write_colored_graph(args, cloud, graph, existing, [coloring])
    return 0


def _cmd_fraction(args) -> int:
    cloud, _ = _load(args)
    graph, existing = _load_graph(args, cloud)
    flags = analysis.region_flags(cloud, args.by, args.value)
    coloring = analysis.subgroup_fraction(
        graph, flags, label=f"fraction_{args.by}_{args.value}"
    )
    _write_colored_graph(args, cloud, graph, existing, [coloring])
    return 0


def _cmd_ols(args) -> int:
    cloud, _ = _load(args)
    fit = regression.ols_fit(cloud, args.outcome, list(args.axes))
    lines = ["term,estimate,std_error,stars"]
    for term, coef, se, stars in zip(
        fit.terms, fit.coefficients, fit.standard_errors, fit.stars()
    ):
        lines.append(f"{term},{_float_cell(coef)},{_float_cell(se)},{stars}")
    lines.append(f"r_squared,{_float_cell(fit.r_squared)},,")
    _write(args.out, "\n".join(lines) + "\n")
    if args.residuals_out:
        rows = ["row_id,fitted,residual"]
        for row_id, fitted, resid in zip(cloud.row_ids, fit.fitted, fit.residuals):
            rows.append(f"{row_id},{_float_cell(fitted)},{_float_cell(resid)}")
        _write(args.residuals_out, "\n".join(rows) + "\n")
    print(f"r_squared={fit.r_squared:.6f}")
    return 0


def _cmd_residual_map(args) -> int:
    cloud, _ = _load(args)
    graph, existing = _load_graph(args, cloud)
    regressors = args.regressors if args.regressors else list(args.axes)
    fit = regression.ols_fit(cloud, args.outcome, regressors)
    colorings = regression.residual_threshold_fractions(graph, fit, args.thresholds)
    _write_colored_graph(args, cloud, graph, existing, colorings)
    return 0


def _cmd_export(args) -> int:
    cloud, _ = _load(args)
    graph, colorings = _load_graph(args, cloud)
    coloring = None
    if args.coloring:
        if args.coloring not in colorings:
            raise ParameterError(f"graph has no coloring {args.coloring!r}")
        values = {int(k): float(v) for k, v in colorings[args.coloring].items()}
        coloring = Coloring(
            graph=graph,
            label=args.coloring,
            values=values,
            scale_min=min(values.values()) if values else None,
            scale_max=max(values.values()) if values else None,
        )
    if not args.dot and not args.svg:
        raise ParameterError("nothing to export: pass --dot and/or --svg")
    if args.dot:
        _write(args.dot, export_dot(graph, coloring))
    if args.svg:
        seed = args.layout_seed if args.layout_seed is not None else _default_seed()
        positions = layout(graph, seed)
        _write(args.svg, export_svg(graph, positions, coloring))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "sweep": _cmd_sweep,
    "build": _cmd_build,
    "color": _cmd_color,
    "compare": _cmd_compare,
    "distance": _cmd_distance,
    "fraction": _cmd_fraction,
    "ols": _cmd_ols,
    "residual-map": _cmd_residual_map,
    "export": _cmd_export,
    "serve": _cmd_serve,
}


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BallMapperError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error[missing_file]: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
