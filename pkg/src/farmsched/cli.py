"""Command-line front end.

Exit codes: 0 success, 1 I/O or data error, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .core import POLICY_NAMES, FarmConfig, Job, ParameterError, QueueModel
from .engine import simulate
from .experiment import ExperimentConfig, format_averaged_grid, run_experiment, write_outputs
from .metrics import summarize
from .oracle import MAX_ORACLE_JOBS, verify_spt_optimal
from .rng import MASK64, Xoshiro256
from .workload import TraceFormatError, WorkloadSpec, generate, parse_arrival, parse_service, read_trace, write_trace

RECORD_HEADER = "job_id,arrival_us,service_us,server_id,start_us,completion_us,wait_us,turnaround_us"

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2

_CENTRAL = ("fcfs", "srpt", "hrrn")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _weights(text: str) -> list[int]:
    try:
        return [int(w) for w in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid weights {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farmsched", description="Server-farm dispatcher simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a workload trace")
    gen.add_argument("--n", type=int, required=True, help="number of jobs")
    gen.add_argument("--arrival", required=True, help="batch | uniform:WINDOW_US | poisson:MEAN_US")
    gen.add_argument("--service", required=True, help="uniform:LO,HI | exp:MEAN | bpareto:ALPHA,LO,HI")
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--out", required=True)

    run = sub.add_parser("run", help="simulate one trace on one farm configuration")
    run.add_argument("--trace", required=True)
    run.add_argument("--servers", type=int, required=True)
    run.add_argument("--model", choices=[m.value for m in QueueModel], required=True)
    run.add_argument("--policy", choices=POLICY_NAMES, required=True)
    run.add_argument("--weights", type=_weights, help="comma-separated WRR weights, one per server")
    run.add_argument("--seed", type=_seed, default=0, help="seed for random routing")
    run.add_argument("--out", required=True)

    compare = sub.add_parser("compare", help="run a policy x server-count grid from a JSON config")
    compare.add_argument("config")

    verify = sub.add_parser("verify", help="check SPT against the exhaustive oracle")
    verify.add_argument("--instances", type=int, required=True)
    verify.add_argument("--max-jobs", type=int, required=True)
    verify.add_argument("--seed", type=_seed, default=0)
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    spec = WorkloadSpec(args.n, parse_arrival(args.arrival), parse_service(args.service), args.seed)
    write_trace(generate(spec), args.out)
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    central = args.policy in _CENTRAL
    if central != (args.model == QueueModel.CENTRAL.value):
        raise ParameterError(f"policy {args.policy} is not available in the {args.model} model")
    if args.weights is not None and args.policy != "wrr":
        raise ParameterError("--weights only applies to --policy wrr")
    config = FarmConfig.for_policy(args.policy, args.servers, weights=args.weights, seed=args.seed)
    try:
        trace = read_trace(args.trace)
    except (OSError, TraceFormatError, UnicodeDecodeError) as exc:
        print(f"farmsched: {args.trace}: {exc}", file=sys.stderr)
        return EXIT_DATA
    if not len(trace):
        print(f"farmsched: {args.trace}: trace has no jobs", file=sys.stderr)
        return EXIT_DATA
    records = simulate(trace, config)
    lines = [RECORD_HEADER]
    lines.extend(
        f"{r.job_id},{r.arrival_us},{r.service_us},{r.server_id},"
        f"{r.start_us},{r.completion_us},{r.wait_us},{r.turnaround_us}"
        for r in records
    )
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(summarize(records, args.policy, args.servers).summary_line())
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        config = ExperimentConfig.load(args.config)
    except OSError as exc:
        raise ParameterError(f"cannot read config: {exc}") from None
    cells = run_experiment(config)
    write_outputs(config, cells)
    sys.stdout.write(format_averaged_grid(config, cells))
    return EXIT_OK


def random_batch_instance(rng: Xoshiro256, max_jobs: int) -> list[Job]:
    n = rng.randint(min(2, max_jobs), max_jobs)
    return [Job(i, 0, rng.randint(1, 10_000)) for i in range(n)]


def cmd_verify(args: argparse.Namespace) -> int:
    if not 1 <= args.max_jobs <= MAX_ORACLE_JOBS:
        raise ParameterError(f"--max-jobs must be in 1..{MAX_ORACLE_JOBS}")
    if args.instances < 1:
        raise ParameterError("--instances must be >= 1")
    rng = Xoshiro256(args.seed)
    passed = sum(verify_spt_optimal(random_batch_instance(rng, args.max_jobs)) for _ in range(args.instances))
    print(f"{passed}/{args.instances} pass")
    return EXIT_OK if passed == args.instances else EXIT_DATA


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "compare": cmd_compare, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"farmsched {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"farmsched {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
