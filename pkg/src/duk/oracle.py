"""Ground-truth union areas and a Monte Carlo estimate of c_n.

The exact area walks the boundary of the union: on every circle, the arcs
not strictly inside another disk are kept and the area follows from
Green's theorem, 1/2 * closed integral of (x dy - y dx). Nothing here uses
the closed-form formulas, so the two routes check each other.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from duk.geometry import TWO_PI, DiskConfig, is_remote_array

MERGE_TOL = 1e-12
MICRO_ARC = 1e-10
CHUNK = 1 << 16
RNG_NAME = "numpy Philox4x64-10; stream per chunk = SeedSequence(seed, spawn_key=(chunk,)); chunk=65536"


class MicroArcWarning(UserWarning):
    """A circle survives only as arcs shorter than the micro-arc threshold."""


@dataclass(frozen=True)
class ArcSpan:
    circle_index: int
    start_angle: float
    end_angle: float

    @property
    def span(self) -> float:
        s = self.end_angle - self.start_angle
        return s + TWO_PI if s <= 0.0 else s


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    samples: int
    seed: int
    rng: str = RNG_NAME
    truncation_bias: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["truncation_bias"] is None:
            del d["truncation_bias"]
        return d


def _circle_segments(centers: np.ndarray, i: int):
    """Elementary angular segments of circle ``i`` and whether each is exposed.

    ``centers`` has shape (m, n, 2). Returns ``(lo, hi, exposed)`` with shape
    (m, K); within a segment the coverage by other disks is constant.
    """
    m, n, _ = centers.shape
    c = centers[:, i, :]
    r2 = np.einsum("mk,mk->m", c, c)
    r = np.sqrt(r2)
    cuts = [np.zeros(m), np.full(m, TWO_PI), np.arctan2(-c[:, 1], -c[:, 0]) % TWO_PI]
    full = np.zeros(m, dtype=bool)
    for j in range(n):
        if j == i:
            continue
        dv = centers[:, j, :] - c
        d2 = np.einsum("mk,mk->m", dv, dv)
        same = d2 == 0.0
        # an identical circle covers the later index only
        full |= same & (j < i)
        # both circles pass through the origin; the other crossing is the
        # origin reflected across the line of centers
        with np.errstate(divide="ignore", invalid="ignore"):
            s = -np.einsum("mk,mk->m", c, dv) / d2
        s = np.where(same, 0.0, s)
        q = 2.0 * (c + s[:, None] * dv)
        cuts.append(np.arctan2(q[:, 1] - c[:, 1], q[:, 0] - c[:, 0]) % TWO_PI)
    cuts = np.sort(np.stack(cuts, axis=1), axis=1)
    lo, hi = cuts[:, :-1], cuts[:, 1:]
    mid = 0.5 * (lo + hi)
    px = c[:, 0, None] + r[:, None] * np.cos(mid)
    py = c[:, 1, None] + r[:, None] * np.sin(mid)
    covered = np.zeros(lo.shape, dtype=bool)
    for j in range(n):
        if j == i:
            continue
        cj = centers[:, j, :]
        rj2 = np.einsum("mk,mk->m", cj, cj)
        dx = px - cj[:, 0, None]
        dy = py - cj[:, 1, None]
        covered |= dx * dx + dy * dy < rj2[:, None]
    exposed = ~covered & ~full[:, None] & (hi - lo > MERGE_TOL)
    return lo, hi, exposed


def _green(c: np.ndarray, r: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """1/2 * integral of (x dy - y dx) along the circle from ``lo`` to ``hi``."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    s = np.sin(half)
    dsin = 2.0 * np.cos(mid) * s
    dcos = -2.0 * np.sin(mid) * s
    return 0.5 * (r * r * (hi - lo) + r * (c[..., 0] * dsin - c[..., 1] * dcos))


def exact_union_area_array(centers: np.ndarray) -> np.ndarray:
    """Union areas for a batch of configurations, shape (m, n, 2) -> (m,)."""
    centers = np.asarray(centers, dtype=float)
    if centers.ndim != 3 or centers.shape[1] < 1 or centers.shape[2] != 2:
        raise ValueError("centers must have shape (m, n, 2) with n >= 1")
    total = np.zeros(centers.shape[0])
    for i in range(centers.shape[1]):
        lo, hi, exposed = _circle_segments(centers, i)
        c = centers[:, i, None, :]
        r = np.sqrt(np.einsum("mk,mk->m", centers[:, i, :], centers[:, i, :]))[:, None]
        total += np.sum(np.where(exposed, _green(c, r, lo, hi), 0.0), axis=1)
    return total


def boundary_arcs(config: DiskConfig) -> list[ArcSpan]:
    """Maximal exposed arcs of every circle, counterclockwise."""
    centers = config.as_array()[None]
    arcs = []
    for i in range(config.n):
        lo, hi, exposed = _circle_segments(centers, i)
        runs: list[list[float]] = []
        for a, b, e in zip(lo[0], hi[0], exposed[0]):
            if not e:
                continue
            if runs and abs(runs[-1][1] - a) <= MERGE_TOL:
                runs[-1][1] = b
            else:
                runs.append([a, b])
        if len(runs) > 1 and runs[0][0] <= MERGE_TOL and runs[-1][1] >= TWO_PI - MERGE_TOL:
            runs[0][0] = runs.pop()[0]
        for a, b in runs:
            arcs.append(ArcSpan(i, float(a % TWO_PI), float(b % TWO_PI)))
    return arcs


def exact_union_area(config: DiskConfig) -> float:
    """Exact area of the union of the disks (remote centers not required).

    Warns with :class:`MicroArcWarning` when some circle keeps only arcs
    shorter than ``MICRO_ARC``: such a circle is covered up to rounding and
    the value should be treated with suspicion.
    """
    arcs = boundary_arcs(config)
    exposed: dict[int, float] = {}
    for a in arcs:
        exposed[a.circle_index] = exposed.get(a.circle_index, 0.0) + a.span
    tiny = sorted(i for i, s in exposed.items() if s < MICRO_ARC)
    if tiny:
        warnings.warn(
            f"circles {tiny} survive only as micro-arcs (< {MICRO_ARC} rad)",
            MicroArcWarning,
            stacklevel=2,
        )
    return float(exact_union_area_array(config.as_array()[None])[0])


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DUK_THREADS", "1")))
    except ValueError:
        return 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunk_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def map_chunks(fn, jobs, workers: int):
    # results come back in chunk order whatever the worker count
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, *zip(*jobs)))


def _union_hits(centers, box, seed, chunk, size):
    rng = chunk_rng(seed, chunk)
    u = rng.random((size, 2))
    x = box[0] + u[:, 0] * (box[1] - box[0])
    y = box[2] + u[:, 1] * (box[3] - box[2])
    inside = np.zeros(size, dtype=bool)
    for cx, cy in centers:
        inside |= (x - cx) ** 2 + (y - cy) ** 2 <= cx * cx + cy * cy
    return int(np.count_nonzero(inside))


def mc_union_area(config: DiskConfig, samples: int, seed: int, workers: Optional[int] = None) -> McEstimate:
    """Hit-or-miss estimate over the tight bounding box of the disks."""
    if samples < 1000:
        raise ValueError("mc_union_area needs at least 1000 samples")
    seed = check_seed(seed)
    centers = [(c.x, c.y) for c in config.centers]
    radii = config.radii
    box = (
        min(c[0] - r for c, r in zip(centers, radii)),
        max(c[0] + r for c, r in zip(centers, radii)),
        min(c[1] - r for c, r in zip(centers, radii)),
        max(c[1] + r for c, r in zip(centers, radii)),
    )
    jobs = [(centers, box, seed, k, size) for k, size in enumerate(_chunk_sizes(samples))]
    hits = sum(map_chunks(_union_hits, jobs, workers or default_workers()))
    box_area = (box[1] - box[0]) * (box[3] - box[2])
    p = hits / samples
    return McEstimate(box_area * p, box_area * math.sqrt(p * (1.0 - p) / samples), samples, seed)


def _cn_chunk(n, radius, seed, chunk, size):
    rng = chunk_rng(seed, chunk)
    centers = rng.uniform(-radius, radius, size=(size, n, 2))
    f = np.zeros(size)
    ok = is_remote_array(centers)
    if ok.any():
        f[ok] = np.exp(-exact_union_area_array(centers[ok]))
    return math.fsum(f), math.fsum(f * f)


def mc_c_n(
    n: int,
    samples: int,
    truncation_radius: float = 3.0,
    seed: int = 0,
    experimental: bool = False,
    workers: Optional[int] = None,
) -> McEstimate:
    """Plain Monte Carlo over the raw 2n-dimensional integral defining c_n.

    Centers are drawn uniformly from [-R, R]^(2n); the integrand is the
    remote-centers indicator times exp(-union area), and the mean is scaled
    by (2R)^(2n) / n!. The reported ``truncation_bias`` is
    exp(-pi R^2) (2R)^(2n).
    """
    if n not in (2, 3) and not (experimental and n >= 1):
        raise ValueError(f"mc_c_n supports n in {{2, 3}} (got {n}); pass experimental=True for others")
    if truncation_radius < 2.0:
        raise ValueError("truncation_radius must be at least 2")
    if samples < 100_000:
        raise ValueError("mc_c_n needs at least 1e5 samples")
    seed = check_seed(seed)
    jobs = [(n, truncation_radius, seed, k, size) for k, size in enumerate(_chunk_sizes(samples))]
    parts = map_chunks(_cn_chunk, jobs, workers or default_workers())
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    mean = s1 / samples
    var = max(0.0, (s2 - s1 * mean) / (samples - 1))
    scale = (2.0 * truncation_radius) ** (2 * n) / math.factorial(n)
    bias = math.exp(-math.pi * truncation_radius**2) * (2.0 * truncation_radius) ** (2 * n)
    return McEstimate(scale * mean, scale * math.sqrt(var / samples), samples, seed, RNG_NAME, bias)
