"""Command-line front-end: ``fho {list,solve,bench,levy-check,oracle-check}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .core import DRIFT_SIGNS, FhoConfig
from .errors import CatalogError, ParameterError, RunError
from .geometry import RADII_MODES, VisibilityRadii
from .harness import (
    ExperimentSpec,
    oracle_check,
    run_experiment,
    run_suite,
    summary_csv,
    table2_specs,
)
from .problems import PENALTY_KINDS, PenaltyStrategy, catalog, constraint_report
from .stochastic import RngStream, hill_tail_index, levy_steps, make_levy_params, survival_curve, survival_slope

EXIT_OK, EXIT_USAGE, EXIT_RUN = 0, 1, 2
_DEFAULTS = FhoConfig()


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=_DEFAULTS.seed, help="base seed")
    p.add_argument("--population", type=int, default=_DEFAULTS.population, help="hunters per run")
    p.add_argument("--iterations", type=int, default=_DEFAULTS.max_iterations, help="sweeps per run")
    p.add_argument("--replicates", type=int, default=30, help="independent runs")
    p.add_argument("--w", type=float, default=_DEFAULTS.w, help="drift weight")
    p.add_argument("--beta", type=float, default=_DEFAULTS.beta, help="Lévy stability index, in (0, 2]")
    p.add_argument("--step-scale", type=float, default=_DEFAULTS.step_scale,
                   help="Lévy step as a fraction of each dimension's range")
    p.add_argument("--radii-mode", choices=RADII_MODES, default=_DEFAULTS.radii_mode, help="visibility radii rule")
    p.add_argument("--r-full", type=float, default=None, help="explicit full-visibility radius (needs --r-zero)")
    p.add_argument("--r-zero", type=float, default=None, help="explicit zero-visibility radius (needs --r-full)")
    p.add_argument("--drift-sign", choices=DRIFT_SIGNS, default=_DEFAULTS.drift_sign, help="drift direction")
    p.add_argument("--penalty", choices=PENALTY_KINDS, default=None,
                   help="constraint handling (default: additive for cantilever, feasibility-count otherwise)")
    p.add_argument("--penalty-weight", type=float, default=1.0, help="additive penalty weight for every constraint")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--sample-std", action="store_true", help="report sample (N-1) instead of population std")
    p.add_argument("--out", type=Path, default=None, help="directory for result files")
    p.add_argument("--json", action="store_true", help="print machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="fho", description="Fuzzy Hunter Optimizer", formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="show the problem catalog", formatter_class=fmt)
    p.add_argument("--json", action="store_true", help="print the catalog as JSON")

    p = sub.add_parser("solve", help="replicated runs on one problem", formatter_class=fmt)
    p.add_argument("problem", help="catalog name (see `fho list`)")
    p.add_argument("--dimension", type=int, default=None, help="dimension for f1..f10 (default 30)")
    _add_config_flags(p)

    p = sub.add_parser("bench", help="the ten-function benchmark suite", formatter_class=fmt)
    p.add_argument("--dimension", type=int, default=30, help="dimension for f1..f10")
    p.add_argument("--include-engineering", action="store_true", help="append cantilever, pressure-vessel, spring")
    _add_config_flags(p)

    p = sub.add_parser("levy-check", help="tail diagnostics for the Lévy sampler", formatter_class=fmt)
    p.add_argument("--beta", type=float, default=_DEFAULTS.beta, help="Lévy stability index, in (0, 2]")
    p.add_argument("--samples", type=int, default=1_000_000, help="number of draws")
    p.add_argument("--fraction", type=float, default=0.01, help="tail fraction used by the Hill estimator")
    p.add_argument("--seed", type=_seed, default=_DEFAULTS.seed, help="seed")
    p.add_argument("--out", type=Path, default=None, help="directory for survival.csv")
    p.add_argument("--json", action="store_true", help="print machine-readable output")

    p = sub.add_parser("oracle-check", help="re-evaluate published engineering optima", formatter_class=fmt)
    p.add_argument("--json", action="store_true", help="print machine-readable output")
    return parser


def config_from_args(args) -> FhoConfig:
    if (args.r_full is None) != (args.r_zero is None):
        raise UsageError("--r-full and --r-zero must be given together")
    try:
        radii = None if args.r_full is None else VisibilityRadii(args.r_full, args.r_zero)
        return FhoConfig(
            w=args.w, beta=args.beta, radii_mode=args.radii_mode, radii=radii, step_scale=args.step_scale,
            drift_sign=args.drift_sign, population=args.population, max_iterations=args.iterations, seed=args.seed,
        )
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def _penalty(args):
    if args.penalty is None:
        if args.penalty_weight != 1.0:
            return PenaltyStrategy("additive", weights=[args.penalty_weight])
        return None
    try:
        weights = [args.penalty_weight] if args.penalty == "additive" else None
        return PenaltyStrategy(args.penalty, weights=weights)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def _outputs(args) -> frozenset:
    return frozenset({"summary", "histories", "solutions"}) if args.out else frozenset({"summary"})


def _check_counts(args) -> None:
    if args.replicates < 1:
        raise UsageError("--replicates must be >= 1")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")


def cmd_list(args) -> int:
    entries = catalog()
    if args.json:
        print(json.dumps(entries, indent=1))
        return EXIT_OK
    print(f"{'name':<16}{'dim':>4}  {'constraints':>11}  {'known optimum':>14}  bounds")
    for e in entries:
        lo, hi = e["lower"], e["upper"]
        bounds = f"[{lo[0]:g}, {hi[0]:g}]^{e['dimension']}" if len(set(lo)) == 1 and len(set(hi)) == 1 else \
            " x ".join(f"[{a:g}, {b:g}]" for a, b in zip(lo, hi))
        opt = "-" if e["known_optimum"] is None else f"{e['known_optimum']:g}"
        print(f"{e['name']:<16}{e['dimension']:>4}  {e['constraints']:>11}  {opt:>14}  {bounds}")
    return EXIT_OK


def cmd_solve(args) -> int:
    _check_counts(args)
    config = config_from_args(args)
    spec = ExperimentSpec(args.problem, config, args.replicates, _outputs(args),
                          dimension=args.dimension, penalty=_penalty(args), ddof=int(args.sample_std))
    spec.base_problem()  # raise CatalogError before any work
    result = run_experiment(spec, out_dir=args.out, workers=args.workers)
    solution = result.solution()
    if args.json:
        print(json.dumps({"summary": result.summary_row(), "solution": solution}, indent=1))
    else:
        print(summary_csv([result.summary_row()]), end="")
        print("best position:", np.array2string(result.stats.best_solution, precision=8, max_line_width=120))
        if result.problem.constraints:
            report = constraint_report(result.problem, result.stats.best_solution)
            print(f"objective: {solution['objective']:.10g}  feasible: {report.feasible}  "
                  f"constraints: {[f'{g:.3e}' for g in report.values]}")
    return EXIT_OK


def cmd_bench(args) -> int:
    _check_counts(args)
    config = config_from_args(args)
    specs = table2_specs(config, args.replicates, args.include_engineering, _outputs(args))
    specs = [
        ExperimentSpec(s.problem, s.config, s.replicates, s.outputs,
                       dimension=args.dimension if s.problem.startswith("f") else None,
                       penalty=_penalty(args), ddof=int(args.sample_std))
        for s in specs
    ]
    suite = run_suite(specs, out_dir=args.out, workers=args.workers)
    if args.json:
        print(json.dumps({"rows": suite.rows, "failures": suite.failures}, indent=1))
    else:
        print(summary_csv(suite.rows), end="")
        for name, err in suite.failures:
            print(f"FAILED {name}: {err}", file=sys.stderr)
    return EXIT_OK if suite.ok else EXIT_RUN


def cmd_levy_check(args) -> int:
    if args.samples < 100:
        raise UsageError("--samples must be >= 100")
    try:
        params = make_levy_params(args.beta)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    draws = levy_steps(RngStream(args.seed), params, args.samples)
    report = {
        "beta": args.beta,
        "sigma_u": params.sigma_u,
        "samples": args.samples,
        "hill_tail_index": hill_tail_index(draws, args.fraction),
        "survival_slope": survival_slope(draws),
        "mean_sign": float(np.mean(np.sign(draws))),
        "median": float(np.median(draws)),
    }
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        x, surv = survival_curve(draws)
        # thin to ~1000 log-spaced ranks so the file stays small
        idx = np.unique(np.geomspace(1, len(x), 1000).astype(int)) - 1
        idx = len(x) - 1 - idx[::-1]
        with open(args.out / "survival.csv", "w") as fh:
            fh.write("abs_step,survival,log10_abs_step,log10_survival\n")
            for i in idx:
                if x[i] > 0:
                    fh.write(f"{x[i]:.16e},{surv[i]:.16e},{np.log10(x[i]):.16e},{np.log10(surv[i]):.16e}\n")
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        for key, value in report.items():
            print(f"{key:>16}: {value}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    entries = oracle_check()
    if args.json:
        print(json.dumps([e.as_dict() for e in entries], indent=1))
    else:
        for e in entries:
            status = "ok" if e.passed else "FAIL"
            print(f"{status:>4} {e.problem:<16} reported {e.reported:<14.10g} computed {e.computed:<18.12g} "
                  f"delta {e.delta:.2e} (tol {e.tolerance:g})  max g {max(e.constraints):.3e}")
    return EXIT_OK if all(e.passed for e in entries) else EXIT_RUN


COMMANDS = {
    "list": cmd_list,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "levy-check": cmd_levy_check,
    "oracle-check": cmd_oracle_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CatalogError, ParameterError) as exc:
        print(f"fho: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RunError as exc:
        print(f"fho: run failed: {exc}", file=sys.stderr)
        return EXIT_RUN


if __name__ == "__main__":
    sys.exit(main())
