from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field

from ..graph import GraphParams
from ..percolation import DEFAULT_MAX_VERTICES, PercolationParam

KINDS = ("connectivity-sweep", "poisson-check", "hyperplane-check", "exploration-check", "oracle-check")
SEED_ENV = "HAMPERC_SEED"
DEFAULT_SEED = 20260101


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GridPoint:
    index: int
    d: int
    n: int
    kind: str  # "lambda" | "p" | "t"
    value: float

    @property
    def graph(self) -> GraphParams:
        return GraphParams(self.d, self.n)

    def param(self) -> PercolationParam:
        return PercolationParam(self.graph, self.kind, self.value)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to regenerate an experiment's records.

    ``graphs`` lists (d, n) pairs; the grid is every graph crossed with every
    value of ``grid`` interpreted in the ``param`` coordinate.
    """

    kind: str
    graphs: tuple[tuple[int, int], ...]
    grid: tuple[float, ...]
    param: str = "t"
    reps: int = 100
    seed: int = DEFAULT_SEED
    workers: int = 1
    alpha: float | None = None
    eps: float = 0.1
    max_vertices: int = DEFAULT_MAX_VERTICES
    seed_source: str = field(default="default", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.param not in ("lambda", "p", "t"):
            raise ConfigError(f"unknown parametrisation {self.param!r}")
        if self.reps < 1:
            raise ConfigError("replications must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.graphs or not self.grid:
            raise ConfigError("graph list and grid must be nonempty")
        if self.alpha is not None and not self.alpha > 0:
            raise ConfigError("alpha must be positive")
        if self.kind in ("hyperplane-check", "exploration-check") and any(d < 2 for d, _ in self.graphs):
            raise ConfigError(f"{self.kind} needs d >= 2")
        for point in self.points():
            try:
                point.param()
            except (ValueError, OverflowError) as exc:
                raise ConfigError(f"grid point d={point.d}, n={point.n}, {point.kind}={point.value}: {exc}") from exc

    def points(self) -> list[GridPoint]:
        out = []
        for d, n in self.graphs:
            for value in self.grid:
                out.append(GridPoint(len(out), d, n, self.param, float(value)))
        return out

    def to_dict(self) -> dict:
        return asdict(self)


def parse_grid(text: str) -> tuple[float, ...]:
    """``lo:hi:step`` (inclusive of hi) or a comma-separated list."""
    if ":" in text:
        try:
            lo, hi, step = (float(x) for x in text.split(":"))
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}; expected lo:hi:step") from exc
        if step <= 0 or hi < lo:
            raise ConfigError(f"bad grid {text!r}; need step > 0 and hi >= lo")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return tuple(round(lo + i * step, 12) for i in range(count))
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad value list {text!r}") from exc


def parse_graphs(d_text: str, n_text: str) -> tuple[tuple[int, int], ...]:
    """Pair up comma-separated d and n lists; a single value broadcasts."""
    try:
        ds = [int(x) for x in str(d_text).split(",")]
        ns = [int(x) for x in str(n_text).split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad --d/--n values {d_text!r}, {n_text!r}") from exc
    if len(ds) == 1:
        ds = ds * len(ns)
    if len(ns) == 1:
        ns = ns * len(ds)
    if len(ds) != len(ns):
        raise ConfigError("--d and --n lists must have equal length or be single values")
    try:
        for d, n in zip(ds, ns):
            GraphParams(d, n)
    except (ValueError, OverflowError) as exc:
        raise ConfigError(str(exc)) from exc
    return tuple(zip(ds, ns))


def resolve_seed(cli_seed: int | None) -> tuple[int, str]:
    if cli_seed is not None:
        return cli_seed, "cli"
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), f"env:{SEED_ENV}"
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV}={env!r} is not an integer") from exc
    return DEFAULT_SEED, "default"
