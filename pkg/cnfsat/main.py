"""
Main entry point for the application.

This module parses the command line arguments and runs the appropriate
command. Every command returns its exit code.

Solve usage: cnfsat solve [-h] [--solver {walksat,resolution,oracle}] [--seed SEED] \
                    [-p P] [--max-flips N] [--max-clauses N] [--max-rounds N] \
                    [--time-budget SECONDS] [--keep-tautologies] [--var-limit N] \
                    [--strict] [--stats] CNF
Verify usage: cnfsat verify [-h] [--strict] CNF MODEL
Generate usage: cnfsat generate [-h] --guests M --tables N --f F --e E [--seed SEED] [--out FILE]
Encode usage: cnfsat encode-seating [-h] [--guests M] [--tables N] \
                    [--instance FILE | --f F --e E --seed SEED] [--out FILE]
Decode usage: cnfsat decode [-h] --instance FILE --model FILE
Experiment usage: cnfsat experiment [-h] [--config FILE] [--csv FILE] [--plot FILE] \
                    [--json FILE] [--master-seed SEED] [--workers N] [--no-timing] \
                    [--no-progress]

The ``solve`` command follows the SAT competition conventions: it prints an
``s`` line with the verdict and, if a model is known, a ``v`` line, and exits
with 10 (satisfiable), 20 (unsatisfiable) or 30 (unknown).

The config file of the experiment is a yaml file in the following style::

    guests: 16
    tables: 2
    f: 0.0
    e_values: [0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.14, 0.16, 0.18, 0.20]
    instances_per_point: 100
    p: 0.5
    max_flips: 100
    complete_solver: resolution
    master_seed: 1

Flat ``key = value`` lines are accepted as well. Without ``--config``, the file
``experiment.yaml`` in the user config directory is used, if it exists.
"""

from __future__ import annotations

import logging
import multiprocessing
import os
import sys
from argparse import ArgumentParser, Namespace
from typing import Any, Callable, Optional

import platformdirs

from . import jsonencoder
from .cnf import Status
from .config import ConfigError, load_config_file
from .dimacs import (
    DimacsDocument,
    DimacsError,
    format_model,
    parse_model,
    read_dimacs,
    serialize_dimacs,
)
from .experiment import ExperimentConfig, emit_csv, run_experiment
from .log import logger
from .plot import emit_plot_svg
from .rng import entropy_seed
from .seating import (
    MalformedInstance,
    SeatingInstance,
    chart_respects,
    decode,
    encode,
    generate_instance,
    parse_instance,
    relation_counts,
    serialize_instance,
)
from .solvers import UnknownSolver, available_solvers, configure_solver
from .solvers.oracle import TooManyVariables
from .solvers.walksat import verify_model

EXIT_SATISFIABLE = 10
EXIT_UNSATISFIABLE = 20
EXIT_UNKNOWN = 30
EXIT_ERROR = 1
EXIT_MALFORMED = 2

STATUS_EXIT_CODES = {
    Status.SATISFIABLE: EXIT_SATISFIABLE,
    Status.UNSATISFIABLE: EXIT_UNSATISFIABLE,
    Status.UNKNOWN: EXIT_UNKNOWN,
}

COMPLETE_SOLVER_LABELS = {"resolution": "PL-Resolution", "oracle": "Oracle"}


def default_config_file() -> str:
    return os.path.join(platformdirs.user_config_dir("cnfsat"), "experiment.yaml")


def error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _read_text(path: str) -> str:
    with open(path, encoding="utf8") as file:
        return file.read()


def _read_bytes(path: str) -> bytes:
    with open(path, "rb") as file:
        return file.read()


def _write_output(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf8") as file:
        file.write(text)


def _solver_config(args: Namespace) -> dict[str, Any]:
    if args.solver == "walksat":
        return {"p": args.p, "max_flips": args.max_flips}
    if args.solver == "resolution":
        return {
            "max_clauses": args.max_clauses,
            "max_rounds": args.max_rounds,
            "time_budget": args.time_budget,
            "discard_tautologies": not args.keep_tautologies,
        }
    return {"var_limit": args.var_limit}


def cmd_solve(args: Namespace) -> int:
    """
    Decide a DIMACS file and print the verdict.

    :return: 10, 20 or 30 for the verdict, 1 on errors
    """
    try:
        doc = read_dimacs(args.cnf, strict=args.strict)
    except (OSError, DimacsError) as exc:
        error(f"Could not read {args.cnf}: {exc}")
        return EXIT_ERROR

    seed = args.seed
    if args.solver == "walksat" and seed is None:
        seed = entropy_seed()
        print(f"c Generated seed: {seed}")

    try:
        solver = configure_solver(args.solver, _solver_config(args))
        outcome = solver.solve(doc.formula, seed=seed)
    except (ConfigError, UnknownSolver, TooManyVariables) as exc:
        error(str(exc))
        return EXIT_ERROR

    if args.stats:
        print(f"c solver: {args.solver}")
        for key, value in outcome.stats_dict().items():
            print(f"c {key}: {value}")
        print(f"c time: {outcome.elapsed:.6f}")
        if outcome.verdict.reason is not None:
            print(f"c reason: {outcome.verdict.reason.value}")

    print(f"s {outcome.verdict.status.value}")
    if outcome.verdict.model is not None:
        print(format_model(outcome.verdict.model))
    return STATUS_EXIT_CODES[outcome.verdict.status]


def cmd_verify(args: Namespace) -> int:
    """
    Check a model certificate against a DIMACS file.

    :return: 0 if the model satisfies the formula, 1 if not, 2 on malformed input
    """
    try:
        formula = read_dimacs(args.cnf, strict=args.strict).formula
        model = parse_model(_read_bytes(args.model), formula.num_vars)
    except (OSError, DimacsError) as exc:
        error(str(exc))
        return EXIT_MALFORMED

    if verify_model(formula, model):
        print("VALID")
        return 0
    print("INVALID")
    return 1


def cmd_generate(args: Namespace) -> int:
    """Draw a random seating instance and write it in the instance text format."""
    seed = args.seed
    if seed is None:
        seed = entropy_seed()
        print(f"Generated seed: {seed}", file=sys.stderr)
    try:
        inst = generate_instance(args.guests, args.tables, args.f, args.e, seed)
        _write_output(args.out, serialize_instance(inst))
    except (OSError, ValueError) as exc:
        error(str(exc))
        return EXIT_ERROR
    return 0


def _load_instance(args: Namespace) -> SeatingInstance:
    if args.instance is not None:
        inst = parse_instance(_read_text(args.instance))
        if args.guests is not None and args.guests != inst.num_guests:
            raise MalformedInstance(
                f"--guests {args.guests} does not match the {inst.num_guests} guests of the file"
            )
        if args.tables is not None and args.tables != inst.num_tables:
            raise MalformedInstance(
                f"--tables {args.tables} does not match the {inst.num_tables} tables of the file"
            )
        return inst

    if args.guests is None or args.tables is None:
        raise MalformedInstance("Without --instance, --guests and --tables are required")
    seed = args.seed
    if seed is None:
        seed = entropy_seed()
        print(f"Generated seed: {seed}", file=sys.stderr)
    return generate_instance(args.guests, args.tables, args.f, args.e, seed)


def cmd_encode_seating(args: Namespace) -> int:
    """Translate a seating instance into DIMACS, the variable map goes into comments."""
    try:
        inst = _load_instance(args)
        formula, encoding = encode(inst)
        friends, enemies = relation_counts(inst)
        comments = [
            f"seating {inst.num_guests} guests {inst.num_tables} tables",
            f"{friends} friends pairs, {enemies} enemies pairs",
        ] + encoding.describe()
        _write_output(args.out, serialize_dimacs(DimacsDocument(formula, comments)))
    except (OSError, ValueError) as exc:
        error(str(exc))
        return EXIT_ERROR
    return 0


def cmd_decode(args: Namespace) -> int:
    """
    Print the seating chart of a model of an encoded instance.

    :return: 0 if the chart respects the instance, 1 otherwise or on errors
    """
    try:
        inst = parse_instance(_read_text(args.instance))
        _, encoding = encode(inst)
        model = parse_model(_read_bytes(args.model), encoding.num_vars)
        chart = decode(model, encoding)
    except (OSError, ValueError) as exc:
        error(str(exc))
        return EXIT_ERROR

    print(chart)
    if not chart_respects(inst, chart):
        error("The seating violates a Friends or Enemies constraint")
        return EXIT_ERROR
    return 0


def _experiment_config(args: Namespace) -> ExperimentConfig:
    path = args.config
    values: dict[str, Any] = {}
    if path is None and os.path.exists(default_config_file()):
        path = default_config_file()
    if path is not None:
        logger.info("Reading experiment config from %s", path)
        values = load_config_file(path)
    if args.master_seed is not None:
        values["master_seed"] = args.master_seed
    if args.workers is not None:
        values["workers"] = args.workers
    if args.no_timing:
        values["timing"] = False

    cfg = ExperimentConfig.from_dict(values)
    if values.get("master_seed") is None:
        print(f"Generated seed: {cfg.master_seed}", file=sys.stderr)
    return cfg


def cmd_experiment(args: Namespace) -> int:
    """Run the sweep and write the CSV table, the SVG plot and the JSON dump."""
    try:
        cfg = _experiment_config(args)
    except (OSError, ConfigError) as exc:
        error(str(exc))
        return EXIT_ERROR

    points = run_experiment(cfg, progress=not args.no_progress)

    try:
        _write_output(args.csv, emit_csv(points))
        if args.plot is not None:
            _write_output(
                args.plot,
                emit_plot_svg(points, complete_label=COMPLETE_SOLVER_LABELS[cfg.complete_solver]),
            )
        if args.json is not None:
            _write_output(
                args.json,
                jsonencoder.dumps({"config": cfg.to_dict(), "points": points}, indent=2) + "\n",
            )
    except (OSError, ValueError) as exc:
        error(str(exc))
        return EXIT_ERROR
    return 0


def build_parser() -> ArgumentParser:
    """Create the parser with all subcommands."""
    parser: ArgumentParser = ArgumentParser(prog="cnfsat")
    parser.add_argument("--verbose", "-v", action="store_true", default=False)
    sub_parsers = parser.add_subparsers(dest="action", required=True)

    solve_parser = sub_parsers.add_parser("solve", help="Decide a DIMACS CNF file")
    solve_parser.add_argument("cnf")
    solve_parser.add_argument(
        "--solver", "-s", choices=sorted(available_solvers), default="walksat"
    )
    solve_parser.add_argument("--seed", type=int, default=None)
    solve_parser.add_argument("-p", type=float, default=0.5)
    solve_parser.add_argument("--max-flips", type=int, default=100)
    solve_parser.add_argument("--max-clauses", type=int, default=200_000)
    solve_parser.add_argument("--max-rounds", type=int, default=1000)
    solve_parser.add_argument("--time-budget", type=float, default=60.0)
    solve_parser.add_argument("--keep-tautologies", action="store_true", default=False)
    solve_parser.add_argument("--var-limit", type=int, default=24)
    solve_parser.add_argument("--strict", action="store_true", default=False)
    solve_parser.add_argument("--stats", action="store_true", default=False)

    verify_parser = sub_parsers.add_parser("verify", help="Check a model against a CNF file")
    verify_parser.add_argument("cnf")
    verify_parser.add_argument("model")
    verify_parser.add_argument("--strict", action="store_true", default=False)

    generate_parser = sub_parsers.add_parser("generate", help="Draw a random seating instance")
    generate_parser.add_argument("--guests", "-M", type=int, required=True)
    generate_parser.add_argument("--tables", "-N", type=int, required=True)
    generate_parser.add_argument("--f", type=float, required=True)
    generate_parser.add_argument("--e", type=float, required=True)
    generate_parser.add_argument("--seed", type=int, default=None)
    generate_parser.add_argument("--out", "-o", default=None)

    encode_parser = sub_parsers.add_parser("encode-seating", help="Encode a seating instance")
    encode_parser.add_argument("--guests", "-M", type=int, default=None)
    encode_parser.add_argument("--tables", "-N", type=int, default=None)
    encode_parser.add_argument("--instance", "-i", default=None)
    encode_parser.add_argument("--f", type=float, default=0.0)
    encode_parser.add_argument("--e", type=float, default=0.0)
    encode_parser.add_argument("--seed", type=int, default=None)
    encode_parser.add_argument("--out", "-o", default=None)

    decode_parser = sub_parsers.add_parser("decode", help="Read a seating chart off a model")
    decode_parser.add_argument("--instance", "-i", required=True)
    decode_parser.add_argument("--model", "-m", required=True)

    experiment_parser = sub_parsers.add_parser("experiment", help="Run the P versus e sweep")
    experiment_parser.add_argument("--config", "-C", default=None)
    experiment_parser.add_argument("--csv", default=None)
    experiment_parser.add_argument("--plot", default=None)
    experiment_parser.add_argument("--json", default=None)
    experiment_parser.add_argument("--master-seed", type=int, default=None)
    experiment_parser.add_argument("--workers", "-j", type=int, default=None)
    experiment_parser.add_argument("--no-timing", action="store_true", default=False)
    experiment_parser.add_argument("--no-progress", action="store_true", default=False)

    return parser


COMMANDS: dict[str, Callable[[Namespace], int]] = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "encode-seating": cmd_encode_seating,
    "decode": cmd_decode,
    "experiment": cmd_experiment,
}


def main(argv: Optional[list[str]] = None) -> int:
    """
    Main entry point for the application.

    This function parses the command line arguments and runs the appropriate
    command based on the arguments.

    :param argv: The arguments, ``sys.argv[1:]`` if ``None``
    :type argv: Optional[list[str]]
    :return: The exit code of the command
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return COMMANDS[args.action](args)


if __name__ == "__main__":
    if os.name == "nt":
        multiprocessing.freeze_support()
    sys.exit(main())
