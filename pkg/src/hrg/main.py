import argparse
import sys
import time
from pathlib import Path

import numpy as np
import polars as pl

from .analysis import clustering_coefficient, degree_report, scaling_experiment
from .config import (
    HISTOGRAM_FILE,
    PREDICTION_FILE,
    REPORT_FILE,
    SCALING_CSV,
    SCALING_JSON,
    VALIDATION_FILE,
    Command,
    ExitCode,
    Regime,
)
from .errors import DomainError, FormatError, HRGError
from .formats import dump_json, read_graph, write_csv, write_graph, write_json
from .generator import GENERATORS
from .runconfig import SELECTABLE_GENERATORS, RunConfig
from .sampler import sample_positions
from .theory import (
    EffectiveCutoff,
    MixingDistribution,
    expected_degree,
    mixed_poisson_pmf,
    regime_constants,
)
from .validate import all_passed, run_battery, summary

# Points on the expected-degree curve emitted by `predict`
CURVE_POINTS = 41

GROWTH = {
    Regime.COLD: "constant",
    Regime.CRITICAL: "logarithmic",
    Regime.HOT: "polynomial",
}


def _grid(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"n-grid must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    """Every flag defaults to None so that only flags actually given override the config."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file of run settings")
    common.add_argument("--n", type=int, help="number of vertices N")
    common.add_argument("--zeta", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float, help="inverse temperature")
    common.add_argument("--disc", action="store_const", const=True, help="hard-threshold model")
    common.add_argument("--seed", type=int)
    common.add_argument("--stream", type=int)
    common.add_argument("--generator", choices=[str(k) for k in SELECTABLE_GENERATORS])
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--graph", type=Path, help="graph directory to analyze (default --out)")
    common.add_argument("--k-min", dest="k_min", type=int)
    common.add_argument("--k-cap", dest="k_cap", type=int)
    common.add_argument("--n-grid", dest="n_grid", type=_grid, help="e.g. 1024,2048,4096,8192")
    common.add_argument("--replicates", type=int)
    common.add_argument("--m", type=int, help="designated vertices for the independence check")
    common.add_argument("--samples", type=int)
    common.add_argument("--omega", type=float, help="slack in the cutoff x0")
    common.add_argument("--quiet", action="store_const", const=True)

    parser = argparse.ArgumentParser(
        prog="hrg", description="Hyperbolic random graph generator and validator"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, text in [
        (Command.GENERATE, "sample positions and edges, write them to --out"),
        (Command.PREDICT, "closed-form regime constants and degree predictions"),
        (Command.ANALYZE, "degree report for a generated graph"),
        (Command.VALIDATE, "run the acceptance checks for the configured regime"),
        (Command.SCALE, "mean degree across an N grid"),
    ]:
        sub.add_parser(str(command), parents=[common], help=text)
    return parser


def cmd_generate(config: RunConfig) -> ExitCode:
    params = config.params
    started = time.perf_counter()
    positions = sample_positions(params, config.sample_seed)
    g = GENERATORS[config.generator](positions, params, config.sample_seed)
    elapsed = time.perf_counter() - started
    edges_path, positions_path = write_graph(g, config.out)
    print(
        f"[generate] N={g.n} |E|={g.n_edges} mean degree={2 * g.n_edges / g.n:.4f} "
        f"kind={g.provenance.kind} wall time={elapsed:.2f}s",
        flush=True,
    )
    print(f"[io] Wrote {edges_path} and {positions_path}", flush=True)
    return ExitCode.OK


def prediction(config: RunConfig) -> dict:
    params = config.params
    constants = regime_constants(params)
    t = np.linspace(0.0, params.radius, CURVE_POINTS)
    try:
        x0 = EffectiveCutoff.from_params(params, config.omega).x0
    except DomainError:
        x0 = None
    curve = pl.DataFrame(
        {
            "t": t,
            "expected_degree": expected_degree(t, params),
            "extrapolated": t > x0 if x0 is not None else np.ones_like(t, dtype=bool),
        }
    )
    payload = {
        "params": params.to_dict(),
        "constants": constants.to_dict(),
        "k_const": constants.k_const,
        "exponent": constants.power_exponent,
        "growth": GROWTH[constants.regime],
        "x0": x0,
        "expected_degree_curve": curve.to_dicts(),
    }
    if constants.regime is Regime.COLD:
        mixing = MixingDistribution.from_params(params)
        payload["mixing"] = {"k_const": mixing.k_const, "shape": mixing.shape}
        alpha, zeta = params.alpha, params.zeta
        payload["mean_degree_limit"] = constants.k_const * 2 * alpha / (2 * alpha - zeta)
        payload["mp_pmf"] = [
            {"k": k, "pmf": mixed_poisson_pmf(k, params)} for k in range(config.k_cap + 1)
        ]
    return payload


def cmd_predict(config: RunConfig) -> ExitCode:
    try:
        payload = prediction(config)
    except DomainError as e:
        sys.stdout.buffer.write(dump_json({"error": str(e)}) + b"\n")
        return ExitCode.VALIDATION
    path = write_json(config.out / PREDICTION_FILE, payload)
    sys.stdout.buffer.write(dump_json(payload) + b"\n")
    print(f"[io] Wrote {path}", file=sys.stderr, flush=True)
    return ExitCode.OK


def cmd_analyze(config: RunConfig) -> ExitCode:
    g = read_graph(config.graph_dir)
    report = degree_report(g, config.k_min, config.k_cap)
    clustering = clustering_coefficient(g)
    payload = {
        "params": g.params.to_dict(),
        "provenance": {
            "seed": g.provenance.seed,
            "kind": str(g.provenance.kind),
            "stream": g.provenance.stream,
        },
        "n_edges": g.n_edges,
        "clustering_coefficient": clustering,
        "report": report.to_dict(),
    }
    report_path = write_json(config.out / REPORT_FILE, payload)
    csv_path = write_csv(config.out / HISTOGRAM_FILE, report.histogram_frame(g.params))
    tail = "n/a" if report.tail_exponent_hat is None else f"{report.tail_exponent_hat:.3f}"
    tv = "n/a" if report.tv_distance_to_mp is None else f"{report.tv_distance_to_mp:.4f}"
    print(
        f"[analysis] mean degree={report.mean_degree:.4f} tail exponent={tail} "
        f"TV to MP={tv} clustering={clustering:.4f}",
        flush=True,
    )
    print(f"[io] Wrote {report_path} and {csv_path}", flush=True)
    return ExitCode.OK


def cmd_validate(config: RunConfig) -> ExitCode:
    try:
        results = run_battery(config)
    except DomainError as e:
        print(f"[validate] Refused: {e}", file=sys.stderr, flush=True)
        write_json(config.out / VALIDATION_FILE, {"passed": False, "refused": str(e), "checks": []})
        return ExitCode.VALIDATION
    path = write_json(config.out / VALIDATION_FILE, summary(results))
    print(f"[io] Wrote {path}", flush=True)
    return ExitCode.OK if all_passed(results) else ExitCode.VALIDATION


def cmd_scale(config: RunConfig) -> ExitCode:
    res = scaling_experiment(
        config.params,
        list(config.n_grid),
        config.replicates,
        config.seed,
        config.generator,
        quiet=config.quiet,
    )
    csv_path = write_csv(config.out / SCALING_CSV, res.table)
    json_path = write_json(config.out / SCALING_JSON, {"params": config.params.to_dict()} | res.to_dict())
    fit = res.linear_fit
    print(f"[scale] mean vs ln N: slope={fit.slope:.4f} R^2={fit.r_squared:.4f}", flush=True)
    if res.loglog_fit is not None:
        print(f"[scale] log-log slope={res.loglog_fit.slope:.4f}", flush=True)
    print(f"[io] Wrote {csv_path} and {json_path}", flush=True)
    return ExitCode.OK


COMMANDS = {
    Command.GENERATE: cmd_generate,
    Command.PREDICT: cmd_predict,
    Command.ANALYZE: cmd_analyze,
    Command.VALIDATE: cmd_validate,
    Command.SCALE: cmd_scale,
}


def run(argv: list[str] | None = None) -> int:
    """Parse flags, merge the config and dispatch.

    Exit codes: 0 ok, 1 usage, 2 validation failure, 3 I/O.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.USAGE
    flags = vars(args)
    command = Command(flags.pop("command"))
    config_path = flags.pop("config")
    try:
        config = RunConfig.from_sources(command, flags, config_path)
    except (DomainError, FormatError) as e:
        print(e, file=sys.stderr, flush=True)
        return ExitCode.USAGE
    except OSError as e:
        print(f"[io] Cannot read config {e.filename}: {e.strerror}", file=sys.stderr, flush=True)
        return ExitCode.IO

    try:
        return COMMANDS[command](config)
    except FormatError as e:
        print(e, file=sys.stderr, flush=True)
        return ExitCode.USAGE
    except OSError as e:
        print(f"[io] {e.filename}: {e.strerror}", file=sys.stderr, flush=True)
        return ExitCode.IO
    except HRGError as e:
        print(e, file=sys.stderr, flush=True)
        return ExitCode.VALIDATION


if __name__ == "__main__":
    sys.exit(run())
