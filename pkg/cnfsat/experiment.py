"""
The satisfiability-versus-enemies sweep.

For every enemy probability ``e`` of the configuration, random seating
instances are generated, encoded and decided by a complete solver
(PL-Resolution, or the truth table oracle) and by WalkSAT. Both solvers see
the identical instances. The result is, per ``e``, the fraction ``P`` of
instances judged satisfiable by each solver.

Instance ``k`` of point ``i`` is generated with the seed
``mix_seed(master_seed, i, k, 0)``, WalkSAT runs on it with
``mix_seed(master_seed, i, k, 1)``. Instances are independent, so they can be
solved by a pool of worker processes. Aggregation is done in a fixed order,
so the result does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any, Iterable, Optional, TextIO

from tqdm import tqdm

from .cnf import Status
from .config import (
    BoolOption,
    ChoiceOption,
    ConfigError,
    ConfigOption,
    FloatOption,
    IntOption,
    ListFloatOption,
    OptionalIntOption,
    complete_config,
)
from .log import logger
from .rng import entropy_seed, mix_seed
from .seating import encode, generate_instance
from .solvers import configure_solver
from .solvers.resolution import ResolutionLimits
from .solvers.walksat import WalkSatParams, verify_model

DEFAULT_E_VALUES: tuple[float, ...] = tuple(round(0.02 * step, 2) for step in range(1, 11))

CSV_HEADER = [
    "e",
    "P_complete",
    "P_walksat",
    "unknown_complete",
    "mean_rt_complete_ms",
    "mean_rt_walksat_ms",
]

COMPLETE_SOLVERS = ["resolution", "oracle"]

experiment_schema: dict[str, ConfigOption[Any]] = {
    "guests": ConfigOption(IntOption(minimum=1), "Number of guests M", 16),
    "tables": ConfigOption(IntOption(minimum=1), "Number of tables N", 2),
    "f": ConfigOption(FloatOption(0.0, 1.0), "Probability of Friends", 0.0),
    "e_values": ConfigOption(
        ListFloatOption(), "Probabilities of Enemies, increasing", list(DEFAULT_E_VALUES)
    ),
    "instances_per_point": ConfigOption(IntOption(minimum=1), "Instances per value of e", 100),
    "p": ConfigOption(FloatOption(0.0, 1.0), "WalkSAT random walk probability", 0.5),
    "max_flips": ConfigOption(IntOption(minimum=1), "WalkSAT flips", 100),
    "max_clauses": ConfigOption(IntOption(minimum=1), "Resolution clause limit", 200_000),
    "max_rounds": ConfigOption(IntOption(minimum=1), "Resolution round limit", 1000),
    "time_budget": ConfigOption(FloatOption(minimum=1e-9), "Resolution time budget (s)", 60.0),
    "discard_tautologies": ConfigOption(BoolOption(), "Resolution drops tautologies", True),
    "complete_solver": ConfigOption(
        ChoiceOption(COMPLETE_SOLVERS), "Complete solver", "resolution"
    ),
    "master_seed": ConfigOption(OptionalIntOption(), "Master seed, random if empty", None),
    "workers": ConfigOption(IntOption(minimum=1), "Worker processes", 1),
    "timing": ConfigOption(BoolOption(), "Measure runtimes", True),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Parameters of a sweep.

    The defaults are the standard setting: 16 guests, 2 tables, no Friends,
    ``e`` from 0.02 to 0.20 in steps of 0.02, 100 instances per point,
    ``p = 0.5`` and 100 flips for WalkSAT, PL-Resolution as complete solver.

    With ``timing`` off, runtimes are reported as 0, which makes the CSV output
    byte-for-byte reproducible.
    """

    # pylint: disable=too-many-instance-attributes

    guests: int = 16
    tables: int = 2
    f: float = 0.0
    e_values: tuple[float, ...] = DEFAULT_E_VALUES
    instances_per_point: int = 100
    walksat_params: WalkSatParams = field(default_factory=WalkSatParams)
    resolution_limits: ResolutionLimits = field(default_factory=ResolutionLimits)
    discard_tautologies: bool = True
    complete_solver: str = "resolution"
    master_seed: int = 0
    workers: int = 1
    timing: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "e_values", tuple(self.e_values))
        if not self.e_values:
            raise ConfigError("e_values must not be empty")
        if any(b <= a for a, b in zip(self.e_values, self.e_values[1:])):
            raise ConfigError("e_values must be strictly increasing")
        if self.e_values[0] < 0 or self.f < 0 or self.f + self.e_values[-1] > 1 + 1e-12:
            raise ConfigError("Need f, e >= 0 and f + max(e) <= 1")
        if self.instances_per_point < 1:
            raise ConfigError("instances_per_point must be at least 1")
        if self.complete_solver not in COMPLETE_SOLVERS:
            raise ConfigError(f"complete_solver must be one of {', '.join(COMPLETE_SOLVERS)}")

    @classmethod
    def from_dict(cls, values: dict[str, Any]) -> ExperimentConfig:
        """
        Create a config from flat options, see ``experiment_schema``.

        A missing ``master_seed`` is drawn from the operating system.

        :raises ConfigError: On unknown or invalid options
        :rtype: ExperimentConfig
        """
        config = complete_config(experiment_schema, values)
        master_seed = config["master_seed"]
        return cls(
            guests=config["guests"],
            tables=config["tables"],
            f=config["f"],
            e_values=tuple(config["e_values"]),
            instances_per_point=config["instances_per_point"],
            walksat_params=WalkSatParams(p=config["p"], max_flips=config["max_flips"]),
            resolution_limits=ResolutionLimits(
                max_clauses=config["max_clauses"],
                max_rounds=config["max_rounds"],
                time_budget=config["time_budget"],
            ),
            discard_tautologies=config["discard_tautologies"],
            complete_solver=config["complete_solver"],
            master_seed=entropy_seed() if master_seed is None else master_seed,
            workers=config["workers"],
            timing=config["timing"],
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the flat options, the inverse of :py:meth:`from_dict`."""
        return {
            "guests": self.guests,
            "tables": self.tables,
            "f": self.f,
            "e_values": list(self.e_values),
            "instances_per_point": self.instances_per_point,
            "p": self.walksat_params.p,
            "max_flips": self.walksat_params.max_flips,
            "max_clauses": self.resolution_limits.max_clauses,
            "max_rounds": self.resolution_limits.max_rounds,
            "time_budget": self.resolution_limits.time_budget,
            "discard_tautologies": self.discard_tautologies,
            "complete_solver": self.complete_solver,
            "master_seed": self.master_seed,
            "workers": self.workers,
            "timing": self.timing,
        }

    def complete_solver_config(self) -> dict[str, Any]:
        if self.complete_solver == "resolution":
            return asdict(self.resolution_limits) | {
                "discard_tautologies": self.discard_tautologies
            }
        return {}


@dataclass
class ExperimentPoint:
    """
    The aggregated result for one value of ``e``.

    :param e: The probability of Enemies
    :param p_complete: Fraction proven satisfiable by the complete solver
    :param p_walksat: Fraction for which WalkSAT found a verified model
    :param unknown_complete: Fraction the complete solver could not decide
    :param mean_runtime_complete: Mean runtime of the complete solver in seconds
    :param mean_runtime_walksat: Mean runtime of WalkSAT in seconds
    :param instances: Number of instances
    """

    e: float
    p_complete: float
    p_walksat: float
    unknown_complete: float
    mean_runtime_complete: float
    mean_runtime_walksat: float
    instances: int = 0


@dataclass
class InstanceRecord:
    """The outcome of both solvers on one instance."""

    point: int
    instance: int
    complete: Status
    walksat_found: bool
    runtime_complete: float
    runtime_walksat: float


def instance_seeds(master_seed: int, point: int, instance: int) -> tuple[int, int]:
    """Return the generator seed and the WalkSAT seed of an instance."""
    return mix_seed(master_seed, point, instance, 0), mix_seed(master_seed, point, instance, 1)


def run_instance(cfg: ExperimentConfig, task: tuple[int, int]) -> InstanceRecord:
    """
    Generate instance ``task = (point, instance)`` and run both solvers on it.

    Exceptions of a solver are logged and recorded as Unknown, respectively
    as no model found.
    """
    point, instance = task
    generator_seed, walksat_seed = instance_seeds(cfg.master_seed, point, instance)
    inst = generate_instance(
        cfg.guests, cfg.tables, cfg.f, cfg.e_values[point], generator_seed
    )
    formula, _ = encode(inst)

    complete_status = Status.UNKNOWN
    runtime_complete = 0.0
    try:
        complete = configure_solver(cfg.complete_solver, cfg.complete_solver_config())
        outcome = complete.solve(formula)
        complete_status = outcome.verdict.status
        runtime_complete = outcome.elapsed
    except Exception:  # pylint: disable=broad-except
        logger.warning(
            "%s failed on instance %d of e=%s", cfg.complete_solver, instance, cfg.e_values[point],
            exc_info=True,
        )

    walksat_found = False
    runtime_walksat = 0.0
    try:
        walker = configure_solver(
            "walksat",
            {"p": cfg.walksat_params.p, "max_flips": cfg.walksat_params.max_flips},
        )
        outcome = walker.solve(formula, seed=walksat_seed)
        model = outcome.verdict.model
        walksat_found = (
            outcome.verdict.is_satisfiable and model is not None and verify_model(formula, model)
        )
        runtime_walksat = outcome.elapsed
    except Exception:  # pylint: disable=broad-except
        logger.warning(
            "walksat failed on instance %d of e=%s", instance, cfg.e_values[point], exc_info=True
        )

    if not cfg.timing:
        runtime_complete = runtime_walksat = 0.0
    return InstanceRecord(
        point, instance, complete_status, walksat_found, runtime_complete, runtime_walksat
    )


def aggregate(cfg: ExperimentConfig, records: Iterable[InstanceRecord]) -> list[ExperimentPoint]:
    """Combine instance records into one point per ``e``, in the order of ``e_values``."""
    by_point: dict[int, list[InstanceRecord]] = {index: [] for index in range(len(cfg.e_values))}
    for record in sorted(records, key=lambda record: (record.point, record.instance)):
        by_point[record.point].append(record)

    points = []
    for index, e in enumerate(cfg.e_values):
        group = by_point[index]
        count = len(group)
        if count == 0:
            continue
        points.append(
            ExperimentPoint(
                e=e,
                p_complete=sum(r.complete is Status.SATISFIABLE for r in group) / count,
                p_walksat=sum(r.walksat_found for r in group) / count,
                unknown_complete=sum(r.complete is Status.UNKNOWN for r in group) / count,
                mean_runtime_complete=sum(r.runtime_complete for r in group) / count,
                mean_runtime_walksat=sum(r.runtime_walksat for r in group) / count,
                instances=count,
            )
        )
    return points


def run_experiment(cfg: ExperimentConfig, progress: bool = False) -> list[ExperimentPoint]:
    """
    Run the sweep.

    :param cfg: The configuration
    :type cfg: ExperimentConfig
    :param progress: Show a progress bar on stderr
    :type progress: bool
    :return: One point per value of ``e``, in order
    :rtype: list[ExperimentPoint]
    """
    tasks = [
        (point, instance)
        for point in range(len(cfg.e_values))
        for instance in range(cfg.instances_per_point)
    ]
    worker = partial(run_instance, cfg)
    records: list[InstanceRecord] = []
    with tqdm(total=len(tasks), disable=not progress, desc="instances") as bar:
        if cfg.workers > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                for record in pool.map(worker, tasks, chunksize=8):
                    records.append(record)
                    bar.update()
        else:
            for task in tasks:
                records.append(worker(task))
                bar.update()

    points = aggregate(cfg, records)
    for point in points:
        logger.info(
            "e=%.2f: P_complete=%.2f P_walksat=%.2f unknown=%.2f",
            point.e,
            point.p_complete,
            point.p_walksat,
            point.unknown_complete,
        )
    return points


def emit_csv(points: list[ExperimentPoint], sink: Optional[TextIO] = None) -> str:
    """
    Format the points as CSV with six decimals, runtimes in milliseconds.

    :param points: The points
    :type points: list[ExperimentPoint]
    :param sink: If given, the CSV is written to it as well
    :type sink: Optional[TextIO]
    :rtype: str
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for point in points:
        writer.writerow(
            [
                f"{value:.6f}"
                for value in (
                    point.e,
                    point.p_complete,
                    point.p_walksat,
                    point.unknown_complete,
                    point.mean_runtime_complete * 1000,
                    point.mean_runtime_walksat * 1000,
                )
            ]
        )
    text = buffer.getvalue()
    if sink is not None:
        sink.write(text)
    return text
