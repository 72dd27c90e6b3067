import io
import logging
import statistics

import pytest

from cnfsat.config import ConfigError
from cnfsat.experiment import (
    CSV_HEADER,
    DEFAULT_E_VALUES,
    ExperimentConfig,
    ExperimentPoint,
    emit_csv,
    instance_seeds,
    run_experiment,
)
from cnfsat.seating import encode, generate_instance
from cnfsat.solvers.oracle import brute_force_seating
from cnfsat.solvers.resolution import pl_resolution

HEADER_LINE = "e,P_complete,P_walksat,unknown_complete,mean_rt_complete_ms,mean_rt_walksat_ms\n"


def small_config(**overrides):
    values = dict(
        guests=6,
        tables=2,
        e_values=(0.0, 0.3),
        instances_per_point=5,
        complete_solver="oracle",
        master_seed=1,
        timing=False,
    )
    values.update(overrides)
    return ExperimentConfig(**values)


def test_defaults():
    cfg = ExperimentConfig()
    assert (cfg.guests, cfg.tables, cfg.f) == (16, 2, 0.0)
    assert len(cfg.e_values) == 10
    assert cfg.e_values[0] == 0.02 and cfg.e_values[-1] == 0.2
    assert cfg.e_values == DEFAULT_E_VALUES
    assert cfg.instances_per_point == 100
    assert (cfg.walksat_params.p, cfg.walksat_params.max_flips) == (0.5, 100)
    assert cfg.complete_solver == "resolution"


@pytest.mark.parametrize(
    "overrides",
    [
        {"e_values": ()},
        {"e_values": (0.2, 0.1)},
        {"e_values": (0.1, 0.1)},
        {"e_values": (-0.1, 0.1)},
        {"f": 0.5, "e_values": (0.4, 0.6)},
        {"instances_per_point": 0},
        {"complete_solver": "walksat"},
    ],
)
def test_invalid_config(overrides):
    with pytest.raises(ConfigError):
        ExperimentConfig(**overrides)


def test_config_from_dict():
    cfg = ExperimentConfig.from_dict({"guests": 8, "e_values": [0.1, 0.2], "max_flips": 50})
    assert cfg.guests == 8
    assert cfg.e_values == (0.1, 0.2)
    assert cfg.walksat_params.max_flips == 50
    assert isinstance(cfg.master_seed, int)
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


def test_config_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"M": 8})


def test_instance_seeds_differ():
    generator_seed, walksat_seed = instance_seeds(1, 0, 0)
    assert generator_seed != walksat_seed
    assert instance_seeds(1, 0, 1) != instance_seeds(1, 1, 0)


def test_small_sweep():
    points = run_experiment(small_config())
    assert [point.e for point in points] == [0.0, 0.3]
    assert points[0].p_complete == 1.0
    for point in points:
        assert point.instances == 5
        assert point.unknown_complete == 0.0
        assert point.p_walksat <= point.p_complete + point.unknown_complete
        assert point.mean_runtime_complete == 0.0


def test_sweep_is_reproducible():
    cfg = small_config(e_values=(0.1, 0.2, 0.4))
    assert emit_csv(run_experiment(cfg)) == emit_csv(run_experiment(cfg))


def test_workers_do_not_change_the_result():
    cfg = small_config(e_values=(0.1, 0.4))
    parallel = small_config(e_values=(0.1, 0.4), workers=2)
    assert emit_csv(run_experiment(parallel)) == emit_csv(run_experiment(cfg))


def test_both_complete_solvers_see_the_same_instances():
    with_oracle = small_config(guests=5, e_values=(0.3, 0.6), instances_per_point=4)
    with_resolution = small_config(
        guests=5, e_values=(0.3, 0.6), instances_per_point=4, complete_solver="resolution"
    )
    oracle_points = run_experiment(with_oracle)
    resolution_points = run_experiment(with_resolution)
    assert [p.p_complete for p in oracle_points] == [p.p_complete for p in resolution_points]
    assert all(point.unknown_complete == 0.0 for point in resolution_points)
    assert [p.p_walksat for p in oracle_points] == [p.p_walksat for p in resolution_points]


def test_no_enemies_at_full_size():
    points = run_experiment(
        ExperimentConfig(e_values=(0.0,), instances_per_point=3, master_seed=4, timing=False)
    )
    assert points[0].p_complete == 1.0
    assert points[0].unknown_complete == 0.0


def test_solver_failures_are_recorded(caplog):
    # 26 variables exceed the oracle's limit
    cfg = small_config(guests=13, e_values=(0.1,), instances_per_point=2)
    with caplog.at_level(logging.WARNING, logger="cnfsat"):
        points = run_experiment(cfg)
    assert points[0].unknown_complete == 1.0
    assert points[0].p_complete == 0.0
    assert "oracle failed" in caplog.text


def test_timing():
    points = run_experiment(small_config(e_values=(0.3,), instances_per_point=2, timing=True))
    assert points[0].mean_runtime_complete > 0.0
    assert points[0].mean_runtime_walksat > 0.0


def test_emit_csv():
    point = ExperimentPoint(0.02, 1.0, 1.0, 0.0, 0.0015, 0.0002, instances=100)
    sink = io.StringIO()
    text = emit_csv([point], sink)
    assert text == HEADER_LINE + "0.020000,1.000000,1.000000,0.000000,1.500000,0.200000\n"
    assert sink.getvalue() == text


def test_emit_csv_without_points():
    assert emit_csv([]) == HEADER_LINE
    assert HEADER_LINE.strip() == ",".join(CSV_HEADER)


def desk_scale_config():
    return ExperimentConfig(
        guests=10, tables=2, complete_solver="oracle", master_seed=2024, timing=False
    )


@pytest.mark.slow
def test_desk_scale_sweep():
    cfg = desk_scale_config()
    points = run_experiment(cfg)
    assert len(points) == 10
    for point in points:
        assert point.unknown_complete == 0.0
        assert point.p_walksat <= point.p_complete

    assert points[0].p_complete > points[-1].p_complete
    inversions = [
        later.p_complete - earlier.p_complete
        for earlier, later in zip(points, points[1:])
        if later.p_complete > earlier.p_complete
    ]
    assert len(inversions) <= 1
    assert all(size <= 0.05 + 1e-9 for size in inversions)

    assert emit_csv(run_experiment(cfg)) == emit_csv(points)


@pytest.mark.slow
def test_default_configuration():
    points = run_experiment(ExperimentConfig(master_seed=16, workers=4, timing=False))
    assert len(emit_csv(points).splitlines()) == 11
    for point in points:
        assert point.p_walksat <= point.p_complete + point.unknown_complete


@pytest.mark.slow
def test_resolution_runtime_grows_with_guests():
    medians = []
    for guests in (6, 8, 10):
        runtimes = []
        seed = 0
        while len(runtimes) < 20:
            inst = generate_instance(guests, 2, 0.0, 0.1, seed=seed)
            seed += 1
            if not brute_force_seating(inst).is_satisfiable:
                continue
            _, stats = pl_resolution(encode(inst)[0])
            runtimes.append(stats.elapsed)
        medians.append(statistics.median(runtimes))
    assert medians[0] < medians[1] < medians[2]
