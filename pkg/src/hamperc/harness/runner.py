"""Replication orchestration.

Replication ``i`` of grid point ``g`` draws its sample from
``mix_seed(master, g, i)``, so every record can be regenerated alone and the
record set does not depend on how replications are spread over workers.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

import numpy as np

from .. import seeding
from ..exploration import event_B, explore_edges, side_counts
from ..percolation import (ResourceLimitError, build_sample, connectivity_report, count_isolated,
                           hyperplane_connectivity)
from ..theory import alpha_parameter
from .config import ExperimentConfig, GridPoint
from .records import ResultRecord


def point_alpha(config: ExperimentConfig, point: GridPoint, t: float) -> float:
    if config.alpha is not None:
        return config.alpha
    return alpha_parameter(t, point.d, config.eps)


def run_replication(config: ExperimentConfig, point: GridPoint, rep: int) -> ResultRecord:
    pp = point.param()
    seed = seeding.mix_seed(config.seed, point.index, rep)
    base = dict(kind=config.kind, grid_index=point.index, replication=rep, d=point.d, n=point.n,
                lam=pp.lam, p=pp.p, t=pp.t, seed=seed)
    start = time.perf_counter()
    try:
        sample = build_sample(point.graph, pp, seed, max_vertices=config.max_vertices)
    except ResourceLimitError as exc:
        return ResultRecord(**base, error=f"resource: {exc}")
    fields = {}
    if config.kind == "poisson-check":
        fields["Y"] = count_isolated(sample)
    else:
        report = connectivity_report(sample)
        fields.update(is_connected=report.is_connected, Y=report.Y, num_components=report.num_components,
                      size_of_largest=report.size_of_largest, giant_plus_isolated=report.giant_plus_isolated)
    if config.kind in ("hyperplane-check", "exploration-check"):
        alpha = point_alpha(config, point, pp.t)
        counts_l, counts_r, b_all = [], [], True
        explored = starved = failed = starving = 0
        for j in range(1, point.d + 1):
            connected = hyperplane_connectivity(sample, j)
            left, right = side_counts(connected)
            counts_l.append(left)
            counts_r.append(right)
            b_r = event_B(sample, j, "R", alpha, connected)
            b_all &= b_r and event_B(sample, j, "L", alpha, connected)
            if config.kind == "exploration-check" and b_r:
                batch = explore_edges(sample, j, connected)
                explored += batch.reasons.size
                starved += batch.starved
                failed += int(np.count_nonzero(batch.first_step2_failed))
                starving += int(np.count_nonzero(batch.first_w <= 1))
        fields.update(hyperplanes_L=counts_l, hyperplanes_R=counts_r, alpha=alpha, B=b_all)
        if config.kind == "exploration-check":
            fields.update(explored=explored, starved=starved, step2_failed_first=failed,
                          w_le1_first=starving)
    return ResultRecord(**base, **fields, wall_time=time.perf_counter() - start)


def _run_chunk(config: ExperimentConfig, tasks: list[tuple[int, int]]) -> list[ResultRecord]:
    points = config.points()
    return [run_replication(config, points[g], i) for g, i in tasks]


def _tasks(config: ExperimentConfig) -> list[tuple[int, int]]:
    return [(p.index, i) for p in config.points() for i in range(config.reps)]


def run_experiment(config: ExperimentConfig, chunk_size: int = 64) -> Iterator[ResultRecord]:
    """Yield every record of ``config`` in (grid point, replication) order."""
    tasks = _tasks(config)
    if config.workers == 1:
        points = config.points()
        for g, i in tasks:
            yield run_replication(config, points[g], i)
        return
    chunks = [tasks[k:k + chunk_size] for k in range(0, len(tasks), chunk_size)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        # map preserves submission order, so output order matches the serial run
        for records in pool.map(_run_chunk, [config] * len(chunks), chunks):
            yield from records
