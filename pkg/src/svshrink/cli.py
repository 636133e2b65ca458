"""Command-line front end: denoise, tune, bench, rmt-check.

Every numerical path is a thin wrapper over the library so CLI output
matches the corresponding library call exactly.  Exit codes are a stable
scripting contract: 0 success, 2 usage or contract violation, 3 numerical
failure; rmt-check additionally exits 1 when a statistical law check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from time import perf_counter

import numpy as np

from ._version import __version__
from .bench import (
    DEFAULT_C,
    DEFAULT_K,
    DEFAULT_TRIALS,
    PAPER_C_VALUES,
    PAPER_K_VALUES,
    ExperimentGrid,
    MethodSpec,
    paper_preset,
    parse_method,
    run_sweep,
    sensitivity_sweep,
    timing_report,
)
from .errors import ContractError, NumericalError
from .rmt import OPTIMAL_SHRINK, SVHT_COEFF, AspectRatio, asymptotic_denoise, verify_laws
from .shrinkage import Atn, Svht, Svlt, Svst, apply
from .spectral import DenoiseProblem, eym_truncate, read_matrix, svd, write_matrix
from .sure import GAP_TOL_FACTOR, GridSpec, solve_svlet, sure, tune_grid

_DEFAULT_METHODS = (
    "svlet(C=10,K=2)",
    "svst-sure",
    "atn-sure",
    "svlt-sure",
    "opt-shrink",
    "svht-4sqrt3",
    "svst-bulk",
    "eym-oracle",
)


@dataclass(frozen=True)
class CliConfig:
    """Validated bench configuration; field defaults are the documented ones."""

    run: str = "sweep"
    n: int = 50
    m: int = 50
    ranks: tuple = tuple(range(1, 51))
    snrs: tuple = (0.5, 1.0, 2.0, 4.0)
    methods: tuple = _DEFAULT_METHODS
    trials: int = DEFAULT_TRIALS
    C: float = DEFAULT_C
    K: int = DEFAULT_K
    c_values: tuple = PAPER_C_VALUES
    k_values: tuple = PAPER_K_VALUES
    out: str = None
    output_dir: str = "."
    gap_factor: float = GAP_TOL_FACTOR

    def __post_init__(self) -> None:
        if self.run not in ("sweep", "sensitivity", "timing"):
            raise ContractError(
                f"run must be one of sweep, sensitivity, timing; got {self.run!r}"
            )
        if not np.isfinite(self.gap_factor) or self.gap_factor < 0.0:
            raise ContractError(f"gap_factor must be >= 0, got {self.gap_factor!r}")

    def grid(self, seed: int) -> ExperimentGrid:
        # Bare "svlet" method entries pick up the configured C and K.
        methods = []
        for spec in self.methods:
            if isinstance(spec, str) and spec.strip() == "svlet":
                methods.append(MethodSpec(family="svlet", C=self.C, K=self.K))
            else:
                methods.append(parse_method(spec))
        return ExperimentGrid(
            n=self.n, m=self.m, ranks=self.ranks, snrs=self.snrs,
            methods=tuple(methods), trials=self.trials, seed=seed,
        )


def _parse_int_list(value: str, key: str) -> tuple:
    value = value.strip()
    if ".." in value and "," not in value:
        lo, _, hi = value.partition("..")
        try:
            return tuple(range(int(lo), int(hi) + 1))
        except ValueError:
            raise ContractError(f"{key}: cannot parse range {value!r}") from None
    items = value.replace(",", " ").split()
    try:
        return tuple(int(item) for item in items)
    except ValueError:
        raise ContractError(f"{key}: cannot parse integer list {value!r}") from None


def _parse_float_list(value: str, key: str) -> tuple:
    items = value.replace(",", " ").split()
    try:
        return tuple(float(item) for item in items)
    except ValueError:
        raise ContractError(f"{key}: cannot parse number list {value!r}") from None


def _parse_scalar(kind, key):
    def parse(value: str):
        try:
            return kind(value)
        except ValueError:
            raise ContractError(f"{key}: cannot parse {value!r}") from None

    return parse


_CONFIG_PARSERS = {
    "run": lambda v: v.strip(),
    "n": _parse_scalar(int, "n"),
    "m": _parse_scalar(int, "m"),
    "ranks": lambda v: _parse_int_list(v, "ranks"),
    "snrs": lambda v: _parse_float_list(v, "snrs"),
    "methods": lambda v: tuple(v.split()),
    "trials": _parse_scalar(int, "trials"),
    "C": _parse_scalar(float, "C"),
    "K": _parse_scalar(int, "K"),
    "c_values": lambda v: _parse_float_list(v, "c_values"),
    "k_values": lambda v: _parse_int_list(v, "k_values"),
    "out": lambda v: v.strip(),
    "output_dir": lambda v: v.strip(),
    "gap_factor": _parse_scalar(float, "gap_factor"),
}


def load_config(path) -> CliConfig:
    """Parse a flat `key = value` file ('#' starts a comment) into CliConfig.

    Unknown and duplicate keys are errors; the seed never comes from the
    file — reproducibility is owned by the mandatory --seed flag.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ContractError(f"cannot read config file {path}: {exc}") from exc
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ContractError(f"config line {lineno}: expected `key = value`, got {raw!r}")
        key = key.strip()
        if key == "seed":
            raise ContractError("config line %d: seed must be given via --seed" % lineno)
        if key not in _CONFIG_PARSERS:
            raise ContractError(
                f"config line {lineno}: unknown key {key!r}; "
                f"valid keys: {', '.join(sorted(_CONFIG_PARSERS))}"
            )
        if key in fields:
            raise ContractError(f"config line {lineno}: duplicate key {key!r}")
        fields[key] = _CONFIG_PARSERS[key](value.strip())
    return CliConfig(**fields)


# ---------------------------------------------------------------------------
# denoise


def _fixed_or_tuned(args, problem, factors):
    """Resolve the svst/atn/svlt rule: explicit parameters win, otherwise
    the default SURE grid search runs.  Returns (rule, params, sure_value)."""
    family = args.method
    if family == "svst":
        if args.lam is not None:
            rule = Svst(lam=args.lam)
            return rule, {"lam": args.lam}, sure(problem, factors, rule).sure
        report = tune_grid(problem, factors, "svst")
        return report.rule, {"lam": report.rule.lam}, report.sure
    if family == "atn":
        given = (args.tau is not None, args.gamma is not None)
        if all(given):
            rule = Atn(tau=args.tau, gamma=args.gamma)
            return rule, {"tau": args.tau, "gamma": args.gamma}, sure(problem, factors, rule).sure
        if any(given):
            raise ContractError("atn needs both --tau and --gamma, or neither (grid search)")
        report = tune_grid(problem, factors, "atn")
        rule = report.rule
        return rule, {"tau": rule.tau, "gamma": rule.gamma}, report.sure
    given = (args.p2 is not None, args.p3 is not None)
    if all(given):
        p1 = DEFAULT_SVLT_P1 if args.p1 is None else args.p1
        rule = Svlt(p1=p1, p2=args.p2, p3=args.p3)
        return rule, {"p1": p1, "p2": args.p2, "p3": args.p3}, sure(problem, factors, rule).sure
    if any(given):
        raise ContractError("svlt needs both --p2 and --p3, or neither (grid search)")
    grid = GridSpec() if args.p1 is None else GridSpec(p1=args.p1)
    report = tune_grid(problem, factors, "svlt", grid)
    rule = report.rule
    return rule, {"p1": rule.p1, "p2": rule.p2, "p3": rule.p3}, report.sure


DEFAULT_SVLT_P1 = 100.0


def cmd_denoise(args) -> int:
    Y = read_matrix(args.input)
    problem = DenoiseProblem(Y=Y, sigma=args.sigma)
    started = perf_counter()
    factors = svd(Y)
    sure_value = None
    if args.method == "svlet":
        solved = solve_svlet(problem, factors, K=args.K, C=args.C)
        params = {"C": solved.rule.basis.C, "K": solved.rule.basis.K}
        sure_value = solved.report.sure
        Xhat = (factors.U * apply(solved.rule, factors.S)) @ factors.V.T
    elif args.method in ("svst", "atn", "svlt"):
        rule, params, sure_value = _fixed_or_tuned(args, problem, factors)
        Xhat = (factors.U * apply(rule, factors.S)) @ factors.V.T
    elif args.method == "svht":
        mu = args.mu
        if mu is None:
            mu = SVHT_COEFF * float(np.sqrt(problem.shape.n)) * problem.sigma
        params = {"mu": mu}
        Xhat = (factors.U * apply(Svht(mu=mu), factors.S)) @ factors.V.T
    elif args.method == "opt-shrink":
        params = {"beta": AspectRatio.of(problem.shape).beta}
        Xhat = asymptotic_denoise(problem, factors, OPTIMAL_SHRINK)
    else:  # eym
        if args.rank is None:
            raise ContractError("--rank is required for the eym method")
        params = {"rank": args.rank}
        Xhat = eym_truncate(Y, args.rank)
    seconds = perf_counter() - started
    output = args.output
    if output is None:
        output = str(Path(args.input).with_suffix(".denoised.csv"))
    write_matrix(output, Xhat)
    print(
        json.dumps(
            {"method": args.method, "params": params, "sure": sure_value, "seconds": seconds}
        )
    )
    return 0


# ---------------------------------------------------------------------------
# tune


def cmd_tune(args) -> int:
    Y = read_matrix(args.input)
    problem = DenoiseProblem(Y=Y, sigma=args.sigma)
    factors = svd(Y)
    if args.family == "svlet":
        solved = solve_svlet(problem, factors, K=args.K, C=args.C)
        print(
            json.dumps(
                {
                    "a": [float(v) for v in solved.a],
                    "condition_estimate": solved.condition_estimate,
                    "ridge_used": solved.ridge_used,
                    "sure": solved.report.sure,
                }
            )
        )
        return 0
    report = tune_grid(problem, factors, args.family)
    columns = {"svst": ("lam",), "atn": ("tau", "gamma"), "svlt": ("p1", "p2", "p3")}[args.family]
    best = min(report.trace, key=lambda item: (item[1], item[0]))
    pairs = " ".join(f"{name}={repr(value)}" for name, value in zip(columns, best[0]))
    print(f"# best {pairs} sure={repr(best[1])}")
    print(",".join(columns + ("sure",)))
    for params, value in report.trace:
        print(",".join([repr(float(p)) for p in params] + [repr(float(value))]))
    return 0


# ---------------------------------------------------------------------------
# bench


def _write_timing_csv(path, rows, seed: int) -> None:
    with open(path, "w", newline="") as stream:
        stream.write(f"# seed={seed}\n")
        stream.write(f"# version={__version__}\n")
        stream.write("method,median_time_s,ratio_vs_svlet\n")
        for row in rows:
            label = row.method
            if "," in label:
                label = f'"{label}"'
            ratio = "" if row.ratio_vs_svlet is None else repr(float(row.ratio_vs_svlet))
            stream.write(f"{label},{repr(float(row.median_seconds))},{ratio}\n")


def cmd_bench(args) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    summary = {}
    if args.preset == "paper":
        grids = paper_preset(args.seed, trials=args.trials)
        for name in ("asymptotic", "sure"):
            table = run_sweep(grids[name], threads=args.threads)
            path = outdir / f"{name}.csv"
            table.write_csv(path, include_timing=args.include_timing)
            written.append(str(path))
        report = sensitivity_sweep(
            grids["sensitivity"], PAPER_C_VALUES, PAPER_K_VALUES, threads=args.threads
        )
        path = outdir / "sensitivity.csv"
        report.table.write_csv(path, include_timing=args.include_timing)
        written.append(str(path))
        summary.update(
            {"best_C": report.best.C, "best_K": report.best.K, "best_nmse": report.best.mean_nmse}
        )
        path = outdir / "timing.csv"
        _write_timing_csv(path, timing_report(grids["timing"]), args.seed)
        written.append(str(path))
    else:
        if args.config is None:
            raise ContractError("bench needs --config FILE or --preset paper")
        config = load_config(args.config)
        if args.output_dir == "." and config.output_dir != ".":
            outdir = Path(config.output_dir)
            outdir.mkdir(parents=True, exist_ok=True)
        grid = config.grid(args.seed)
        if config.run == "sweep":
            table = run_sweep(grid, threads=args.threads)
            path = outdir / (config.out or "sweep.csv")
            table.write_csv(path, include_timing=args.include_timing)
            written.append(str(path))
        elif config.run == "sensitivity":
            report = sensitivity_sweep(
                grid, config.c_values, config.k_values, threads=args.threads
            )
            path = outdir / (config.out or "sensitivity.csv")
            report.table.write_csv(path, include_timing=args.include_timing)
            written.append(str(path))
            summary.update(
                {
                    "best_C": report.best.C,
                    "best_K": report.best.K,
                    "best_nmse": report.best.mean_nmse,
                }
            )
        else:
            path = outdir / (config.out or "timing.csv")
            _write_timing_csv(path, timing_report(grid), args.seed)
            written.append(str(path))
    summary["written"] = written
    print(json.dumps(summary))
    return 0


# ---------------------------------------------------------------------------
# rmt-check


def cmd_rmt_check(args) -> int:
    checks = verify_laws(args.n, args.beta, args.trials, args.seed)
    failed = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        failed += 0 if check.passed else 1
        print(
            f"{status} {check.name}: statistic={check.statistic:.6g} "
            f"target={check.target:.6g} tolerance={check.tolerance:g} ({check.mode})"
        )
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser / entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svshrink",
        description="Singular-value shrinkage denoising, tuning, and benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"svshrink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    den = sub.add_parser("denoise", help="denoise a matrix CSV and write the estimate")
    den.add_argument("input", help="path to the observed matrix CSV")
    den.add_argument("--sigma", type=float, required=True, help="noise standard deviation (> 0)")
    den.add_argument(
        "--method",
        required=True,
        choices=["svlet", "svst", "atn", "svlt", "svht", "opt-shrink", "eym"],
    )
    den.add_argument("--C", type=float, default=DEFAULT_C, help="svlet width multiplier")
    den.add_argument("--K", type=int, default=DEFAULT_K, help="svlet expansion order")
    den.add_argument("--lam", type=float, help="svst threshold (omit to grid-search)")
    den.add_argument("--tau", type=float, help="atn threshold (omit to grid-search)")
    den.add_argument("--gamma", type=float, help="atn exponent (omit to grid-search)")
    den.add_argument("--p1", type=float, help="svlt steepness (default 100)")
    den.add_argument("--p2", type=float, help="svlt center index (omit to grid-search)")
    den.add_argument("--p3", type=float, help="svlt offset (omit to grid-search)")
    den.add_argument("--mu", type=float, help="svht threshold (default 4/sqrt(3)*sqrt(n)*sigma)")
    den.add_argument("--rank", type=int, help="eym truncation rank")
    den.add_argument("--output", help="output CSV path (default INPUT.denoised.csv)")
    den.set_defaults(func=cmd_denoise)

    tun = sub.add_parser("tune", help="print the SURE search trace or solved coefficients")
    tun.add_argument("input", help="path to the observed matrix CSV")
    tun.add_argument("--sigma", type=float, required=True, help="noise standard deviation (> 0)")
    tun.add_argument("--family", required=True, choices=["svlet", "svst", "atn", "svlt"])
    tun.add_argument("--C", type=float, default=DEFAULT_C, help="svlet width multiplier")
    tun.add_argument("--K", type=int, default=DEFAULT_K, help="svlet expansion order")
    tun.set_defaults(func=cmd_tune)

    ben = sub.add_parser("bench", help="run seeded benchmark sweeps and write CSV tables")
    ben.add_argument("--config", help="flat key=value config file")
    ben.add_argument("--preset", choices=["paper"], help="run the documented 50x50 regime")
    ben.add_argument("--seed", type=int, required=True, help="RNG seed (mandatory)")
    ben.add_argument("--threads", type=int, default=1, help="worker threads over grid cells")
    ben.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="realizations per cell")
    ben.add_argument("--output-dir", default=".", help="directory for CSV outputs")
    ben.add_argument(
        "--include-timing",
        action="store_true",
        help="fill median_time_s in sweep CSVs (breaks cross-run byte identity)",
    )
    ben.set_defaults(func=cmd_bench)

    rmt = sub.add_parser("rmt-check", help="Monte Carlo verification of the spectral laws")
    rmt.add_argument("--n", type=int, required=True, help="matrix rows")
    rmt.add_argument("--beta", type=float, default=1.0, help="aspect ratio in (0, 1]")
    rmt.add_argument("--trials", type=int, default=10, help="draws per spiked check")
    rmt.add_argument("--seed", type=int, required=True, help="RNG seed (mandatory)")
    rmt.set_defaults(func=cmd_rmt_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
