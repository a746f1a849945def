"""Aggregation of replication records into per-grid-point summaries."""
from __future__ import annotations

import math
from collections import defaultdict
from statistics import NormalDist
from typing import Iterable

import numpy as np

from ..graph import GraphParams
from ..percolation import ResourceLimitError
from ..theory import brute_force_connectivity, expected_isolated, falling_factorial, poisson_pmf, predicted_connectivity
from .records import ResultRecord, SummaryRow

K_MAX = 20


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    low = 0.0 if successes == 0 else max(0.0, centre - half)
    high = 1.0 if successes == trials else min(1.0, centre + half)
    return low, high


def empirical_factorial_moment(ys: Iterable[int], r: int) -> float:
    """Sample mean of Y(Y-1)...(Y-r+1)."""
    if r < 1:
        raise ValueError(f"order r must be >= 1, got {r}")
    ys = [int(y) for y in ys]
    if not ys:
        raise ValueError("no samples")
    return math.fsum(falling_factorial(y, r) for y in ys) / len(ys)


def empirical_pmf(ys: Iterable[int]) -> np.ndarray:
    ys = np.asarray(list(ys), dtype=np.int64)
    if ys.size == 0:
        raise ValueError("no samples")
    return np.bincount(ys) / ys.size


def tv_distance_poisson(ys: Iterable[int], mu: float, k_max: int = K_MAX) -> float:
    """Total variation distance between the empirical law of ``ys`` and Poisson(mu).

    Values above ``k_max`` are pooled into one tail cell on both sides.
    """
    pmf = empirical_pmf(ys)
    emp = np.zeros(k_max + 2)
    head = pmf[: k_max + 1]
    emp[: head.size] = head
    emp[k_max + 1] = pmf[k_max + 1:].sum()
    theo = np.array([poisson_pmf(k, mu) for k in range(k_max + 1)])
    theo = np.append(theo, max(0.0, 1.0 - theo.sum()))
    return float(0.5 * np.abs(emp - theo).sum())


def poisson_rate(rule: str, d: int, n: int, p: float, t: float) -> float:
    """``limit``: exp(-t); ``exact``: the finite-size mean n^d (1-p)^m."""
    if rule == "limit":
        return math.exp(-t)
    if rule == "exact":
        return expected_isolated(GraphParams(d, n), p)
    raise ValueError(f"unknown Poisson rate rule {rule!r}")


def _freq(values):
    values = [v for v in values if v is not None]
    return sum(bool(v) for v in values) / len(values) if values else None


def summarize(records: Iterable[ResultRecord], mu_rule: str = "limit",
              confidence: float = 0.95, moments: int = 3) -> list[SummaryRow]:
    groups: dict[int, list[ResultRecord]] = defaultdict(list)
    for rec in records:
        groups[rec.grid_index].append(rec)
    if not groups:
        raise ValueError("no records to summarize")
    rows = []
    for g in sorted(groups):
        recs = groups[g]
        ok = [r for r in recs if r.error is None]
        first = recs[0]
        mu = poisson_rate(mu_rule, first.d, first.n, first.p, first.t)
        conn = [r.is_connected for r in ok if r.is_connected is not None]
        ys = [r.Y for r in ok if r.Y is not None]
        p_conn = ci = None
        if conn:
            hits = sum(conn)
            p_conn = hits / len(conn)
            ci = wilson_interval(hits, len(conn), confidence)
        b_vals = [r.B for r in ok if r.B is not None]
        given_b = [r.giant_plus_isolated for r in ok if r.B and r.giant_plus_isolated is not None]
        reference = None
        if first.kind == "oracle-check":
            try:
                reference = brute_force_connectivity(GraphParams(first.d, first.n), first.p)
            except ResourceLimitError:
                reference = None
        rows.append(SummaryRow(
            kind=first.kind, grid_index=g, d=first.d, n=first.n, lam=first.lam, p=first.p, t=first.t,
            records=len(recs), errors=len(recs) - len(ok),
            p_connected=p_conn,
            ci_low=None if ci is None else ci[0],
            ci_high=None if ci is None else ci[1],
            predicted=predicted_connectivity(first.t),
            mean_Y=float(np.mean(ys)) if ys else None,
            y_pmf=[float(x) for x in empirical_pmf(ys)] if ys else None,
            mu=mu,
            tv_poisson=tv_distance_poisson(ys, mu) if ys else None,
            factorial_moments=[empirical_factorial_moment(ys, r) for r in range(1, moments + 1)] if ys else None,
            B_freq=_freq(b_vals),
            giant_plus_isolated_freq=_freq([r.giant_plus_isolated for r in ok]),
            giant_plus_isolated_given_B=_freq(given_b),
            reference=reference,
        ))
    return rows
