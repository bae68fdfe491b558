#!/usr/bin/env python3
"""noisygrover – CLI entry-point."""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import csvfile, sweep, threshold, validate
from .atomic import AtomicFile
from .core import Kind, Placement, channel, grover_params, optimal_iterations

log = logging.getLogger("noisygrover")

COMMANDS = ("sweep", "validate", "threshold", "figure")
DEFAULT_ETAS = (1.0, 0.9, 0.8, 0.7)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_items: int
    n_targets: int
    kind: Kind
    param_name: str  # "eta", "p", "gamma" or "alpha"
    values: tuple
    t_end: int
    placement: Placement
    p_requested: float | None
    out: Path | None
    workers: int

    def channels(self):
        """One channel per configured value."""
        if self.param_name == "eta":
            return [channel(self.kind.value, eta=v) for v in self.values]
        return [channel(self.kind.value, raw=v) for v in self.values]

    def csv_config(self) -> dict[str, str]:
        return {
            "format_version": csvfile.FORMAT_VERSION,
            "n": str(self.n_items),
            "m": str(self.n_targets),
            "channel": self.kind.value,
            "placement": self.placement.value,
            "t_end": str(self.t_end),
        }


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got {text!r}") from None


def _parse(argv=None) -> argparse.Namespace:
    p = argparse.ArgumentParser(prog="noisygrover", description="Grover search under diagonalizable noise")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=256, help="Number of items N (default: 256)")
    p.add_argument("--m", type=int, default=1, help="Number of targets m (default: 1)")
    p.add_argument("--channel", default="bpf", choices=[k.value for k in Kind])
    level = p.add_mutually_exclusive_group()
    level.add_argument("--eta", type=_float_list, default=None, help="Comma separated eta values")
    level.add_argument("--p", type=_float_list, default=None, help="Flip channels: probability of no flip")
    level.add_argument("--gamma", type=_float_list, default=None, help="Damping channels: gamma")
    level.add_argument("--alpha", type=_float_list, default=None, help="Depolarizing: alpha")
    p.add_argument("--t-end", type=int, default=None, help="Last iteration (default: 4T)")
    p.add_argument("--placement", default="iteration", choices=[pl.value for pl in Placement])
    p.add_argument("--p-req", type=float, default=None, help="Requested success probability (threshold)")
    p.add_argument("--out", default=None, help="Output file (sweep, threshold) or directory (figure)")
    p.add_argument("--workers", type=int, default=1, help="Threads used for sweeps (default: 1)")
    p.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return p.parse_args(argv)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Validate the parsed flags into a RunConfig, raising ValueError on bad combinations."""
    params = grover_params(args.n, args.m)
    kind = Kind(args.channel)

    param_name, values = "eta", None
    for name in ("eta", "p", "gamma", "alpha"):
        if getattr(args, name) is not None:
            param_name, values = name, getattr(args, name)

    if kind is Kind.AMPLITUDE_DAMPING:
        if param_name == "eta" and values is not None:
            raise ValueError("amplitude damping has no eta, use --gamma")
        if values is None:
            param_name, values = "gamma", DEFAULT_ETAS
    elif values is None:
        values = (1.0,) if kind is Kind.IDENTITY else DEFAULT_ETAS

    allowed = {"p": {"bf", "pf", "bpf"}, "gamma": {"pd", "ad"}, "alpha": {"dp"}}
    if param_name in allowed and kind.value not in allowed[param_name]:
        raise ValueError(f"--{param_name} does not apply to channel {kind.value}")
    if not values:
        raise ValueError(f"empty --{param_name} list")
    if param_name == "eta" and any(not 0.0 < v <= 1.0 for v in values):
        raise ValueError(f"eta values must lie in (0, 1], got {values}")

    t_end = max(4 * optimal_iterations(params), 1) if args.t_end is None else args.t_end
    if t_end < 1:
        raise ValueError(f"--t-end must be at least 1, got {t_end}")
    if args.workers < 1:
        raise ValueError(f"--workers must be at least 1, got {args.workers}")
    if args.command == "threshold" and args.p_req is None:
        raise ValueError("threshold needs --p-req")

    config = RunConfig(
        command=args.command,
        n_items=params.n_items,
        n_targets=params.n_targets,
        kind=kind,
        param_name=param_name,
        values=tuple(values),
        t_end=t_end,
        placement=Placement(args.placement),
        p_requested=args.p_req,
        out=None if args.out is None else Path(args.out),
        workers=args.workers,
    )
    config.channels()  # reject out-of-range parameters now
    return config


def run_sweep(config: RunConfig) -> int:
    params = grover_params(config.n_items, config.n_targets)
    rows, summaries = sweep.sweep(params, config.channels(), config.t_end, config.placement, config.workers)
    if config.out is None:
        csvfile.save(sys.stdout, rows, summaries, config.csv_config())
    else:
        with AtomicFile(config.out, "w") as f:
            csvfile.save(f, rows, summaries, config.csv_config())
        log.info("wrote %d rows to %s", len(rows), config.out)
    return EXIT_OK


def run_validate(config: RunConfig) -> int:
    results = validate.run_checks()
    print(validate.format_table(results))
    failed = [r.name for r in results if not r.ok]
    if failed:
        log.error("failed: %s", ", ".join(failed))
        return EXIT_FAILED
    return EXIT_OK


def _threshold_result(params, config: RunConfig) -> threshold.ThresholdResult:
    """eta* where one exists, otherwise the first iteration reaching p_req under the configured channel."""
    first = config.channels()[0]
    if config.kind is Kind.AMPLITUDE_DAMPING:
        return threshold.speedup_report(params, first, config.p_requested, config.placement)
    try:
        result = threshold.eta_threshold(params, config.kind, config.p_requested, config.placement)
    except threshold.TrivialRequest:
        print("trivial: any η suffices")
        return threshold.speedup_report(params, first, config.p_requested, config.placement)
    print(f"eta* = {result.eta_star:.6f}")
    return result


def run_threshold(config: RunConfig) -> int:
    params = grover_params(config.n_items, config.n_targets)
    p_req = config.p_requested
    try:
        result = _threshold_result(params, config)
    except threshold.NoThresholdExists as e:
        print(f"no threshold: {e}")
        return EXIT_OK
    except threshold.Unreachable as e:
        print(f"unreachable: best success probability is {e.achieved:.12g}")
        return EXIT_OK

    print(f"t = {result.t_at_threshold}, achieved p = {result.p_achieved:.12g}")
    print(f"quantum queries {result.quantum_queries} vs classical {result.classical_queries:g}")
    print("quantum advantage" if result.advantage else "no quantum advantage")

    if config.out is not None:
        with AtomicFile(config.out, "w") as f:
            f.write("channel,eta_star,t,p_requested,p_achieved,quantum_queries,classical_queries\n")
            eta = csvfile.format_float(result.eta_star)
            f.write(
                f"{result.channel_kind.value},{eta},{result.t_at_threshold},{csvfile.format_float(p_req)},"
                f"{csvfile.format_float(result.p_achieved)},{result.quantum_queries},"
                f"{csvfile.format_float(result.classical_queries)}\n"
            )
    return EXIT_OK


def run_figure(config: RunConfig) -> int:
    out_dir = Path(".") if config.out is None else config.out
    out_dir.mkdir(parents=True, exist_ok=True)
    figure_config = {"format_version": csvfile.FORMAT_VERSION, "n": str(sweep.FIGURE_N), "m": str(sweep.FIGURE_M)}

    all_summaries = []
    for kind, (rows, summaries) in sweep.figure_sweeps(config.workers).items():
        path = out_dir / f"figure-{kind.value}.csv"
        with AtomicFile(path, "w") as f:
            csvfile.save(f, rows, summaries, {**figure_config, "channel": kind.value})
        log.info("wrote %s", path)
        all_summaries.extend(summaries)

    with AtomicFile(out_dir / "figure-summary.csv", "w") as f:
        csvfile.save(f, [], all_summaries, figure_config)
    return EXIT_OK


RUNNERS = {"sweep": run_sweep, "validate": run_validate, "threshold": run_threshold, "figure": run_figure}


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(level=args.log_level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    try:
        config = config_from_args(args)
        return RUNNERS[config.command](config)
    except threshold.BracketError as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
