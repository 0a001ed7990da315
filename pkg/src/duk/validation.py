"""Random remote-center configurations and the closed-form vs. oracle campaign."""
from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from duk.closed_form import union_area
from duk.geometry import DiskConfig, PolarParams, from_polar, is_remote, sort_by_argument
from duk.oracle import check_seed, map_chunks, chunk_rng, default_workers, exact_union_area
from duk.quadrature import t_interval

TOLERANCE = 1e-9
MAX_REMOTE_N = 5
_BATCH = 64


def random_remote_config(rng: np.random.Generator, n: int) -> DiskConfig:
    """A random configuration of ``n`` disks with remote centers.

    n = 2 draws the ratio straight from the admissible interval; larger n
    proposes gaps of at least pi/3 and log-normal-ish radii and rejects
    proposals that fail :func:`is_remote`.
    """
    if not 1 <= n <= MAX_REMOTE_N:
        raise ValueError(f"remote configurations exist only for 1 <= n <= {MAX_REMOTE_N}")
    r1 = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    theta0 = rng.uniform(0.0, 2 * math.pi)
    if n == 1:
        return from_polar(PolarParams(r1, theta0))
    while True:
        if n == 2:
            theta1 = rng.uniform(math.pi / 3, 5 * math.pi / 3)
            iv = t_interval(theta1)
            if iv.empty:
                continue
            lo = math.log(iv.lo) if iv.lo > 0 else -2.0
            hi = math.log(iv.hi) if math.isfinite(iv.hi) else 2.0
            params = PolarParams(r1, theta0, (math.exp(rng.uniform(lo, hi)),), (theta1,))
            config = from_polar(params)
            if is_remote(config):
                return config
            continue
        slack = 2 * math.pi - n * math.pi / 3
        gaps = math.pi / 3 + slack * rng.dirichlet(np.ones(n))
        spread = 0.45 if n >= 4 else 0.8
        log_t = rng.uniform(-spread, spread, size=n - 1)
        try:
            params = PolarParams(r1, theta0, tuple(np.exp(log_t)), tuple(gaps[:-1]))
        except ValueError:
            continue
        config = from_polar(params)
        if is_remote(config):
            return config


def _trial_batch(seed, first, count, n_values):
    rows = []
    for k in range(first, first + count):
        rng = chunk_rng(seed, k)
        n = int(n_values[rng.integers(len(n_values))])
        config = sort_by_argument(random_remote_config(rng, n))
        a = union_area(config)
        b = exact_union_area(config)
        rows.append((n, config.to_pairs(), a, b))
    return rows


def validate(
    trials: int,
    n_values: Sequence[int] = (2, 3, 4, 5),
    seed: int = 42,
    workers: Optional[int] = None,
) -> dict:
    """Compare :func:`union_area` with :func:`exact_union_area` on random configurations.

    Trial k draws from its own stream derived from ``(seed, k)``, so the
    report does not depend on the worker count.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n_values = tuple(int(v) for v in n_values)
    if not n_values or any(not 2 <= v <= MAX_REMOTE_N for v in n_values):
        raise ValueError(f"n values must lie in 2..{MAX_REMOTE_N}")
    seed = check_seed(seed)
    jobs = [(seed, s, min(_BATCH, trials - s), n_values) for s in range(0, trials, _BATCH)]
    rows = [r for batch in map_chunks(_trial_batch, jobs, workers or default_workers()) for r in batch]

    abs_d = [abs(a - b) for _, _, a, b in rows]
    rel_d = [d / b for d, (_, _, _, b) in zip(abs_d, rows)]
    worst = max(range(len(rows)), key=lambda i: rel_d[i])
    per_n = {}
    for (n, _, _, _), rd in zip(rows, rel_d):
        entry = per_n.setdefault(str(n), {"trials": 0, "max_rel_diff": 0.0})
        entry["trials"] += 1
        entry["max_rel_diff"] = max(entry["max_rel_diff"], rd)
    n_w, cfg_w, a_w, b_w = rows[worst]
    return {
        "trials": trials,
        "n_values": list(n_values),
        "tolerance": TOLERANCE,
        "max_abs_diff": max(abs_d),
        "mean_abs_diff": math.fsum(abs_d) / trials,
        "max_rel_diff": rel_d[worst],
        "mean_rel_diff": math.fsum(rel_d) / trials,
        "passed": rel_d[worst] <= TOLERANCE,
        "per_n": dict(sorted(per_n.items())),
        "worst": {"n": n_w, "config": cfg_w, "closed_form": a_w, "oracle": b_w, "rel_diff": rel_d[worst]},
    }
