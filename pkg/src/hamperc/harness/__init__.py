from .config import ConfigError, ExperimentConfig, GridPoint, parse_graphs, parse_grid
from .records import ResultRecord, SummaryRow, emit, read_rows
from .runner import run_experiment, run_replication
from .stats import empirical_factorial_moment, summarize, tv_distance_poisson, wilson_interval
