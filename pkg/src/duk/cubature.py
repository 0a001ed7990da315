"""Globally adaptive cubature on boxes with the Genz-Malik degree-7 rule.

Each cell is integrated by the degree-7 rule and the embedded degree-5
rule; their difference is the cell's error estimate. The cells carrying
the most error are halved along the axis with the largest fourth
difference until the summed error meets the tolerance.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class IntegrandError(FloatingPointError):
    def __init__(self, point):
        self.point = tuple(float(v) for v in point)
        super().__init__(f"integrand is not finite at {self.point}")


class _Rule:
    """Genz-Malik nodes on [-1, 1]^d with degree-7 and degree-5 weights."""

    def __init__(self, d: int):
        l2, l4, l5 = np.sqrt(9 / 70), np.sqrt(9 / 10), np.sqrt(9 / 19)
        eye = np.eye(d)
        nodes = [np.zeros((1, d))]
        nodes += [l2 * eye, -l2 * eye, l4 * eye, -l4 * eye]
        pairs = []
        for i, j in itertools.combinations(range(d), 2):
            for si, sj in itertools.product((1, -1), repeat=2):
                p = np.zeros(d)
                p[i], p[j] = si * l4, sj * l4
                pairs.append(p)
        nodes.append(np.array(pairs).reshape(-1, d))
        nodes.append(l5 * np.array(list(itertools.product((1, -1), repeat=d)), dtype=float))
        self.nodes = np.concatenate(nodes)
        counts = [1, 2 * d, 2 * d, 2 * d * (d - 1), 2**d]
        w7 = [
            (12824 - 9120 * d + 400 * d * d) / 19683,
            980 / 6561,
            (1820 - 400 * d) / 19683,
            200 / 19683,
            6859 / 19683 / 2**d,
        ]
        w5 = [(729 - 950 * d + 50 * d * d) / 729, 245 / 486, (265 - 100 * d) / 1458, 25 / 729, 0.0]
        self.w7 = np.repeat(w7, counts)
        self.w5 = np.repeat(w5, counts)
        self.d = d
        self.ratio = (l2 / l4) ** 2

    def apply(self, f, centers: np.ndarray, halfwidths: np.ndarray):
        """Integrate ``f`` over every cell; returns value, error, split axis."""
        m, d = centers.shape
        pts = centers[:, None, :] + halfwidths[:, None, :] * self.nodes[None, :, :]
        vals = np.asarray(f(pts.reshape(-1, d)), dtype=float).reshape(m, -1)
        bad = ~np.isfinite(vals)
        if bad.any():
            k = np.argwhere(bad)[0]
            raise IntegrandError(pts[k[0], k[1]])
        vol = np.prod(2.0 * halfwidths, axis=1)
        i7 = vol * (vals @ self.w7)
        i5 = vol * (vals @ self.w5)
        f0 = vals[:, :1]
        a = vals[:, 1 : 1 + d] + vals[:, 1 + d : 1 + 2 * d] - 2 * f0
        b = vals[:, 1 + 2 * d : 1 + 3 * d] + vals[:, 1 + 3 * d : 1 + 4 * d] - 2 * f0
        axis = np.argmax(np.abs(a - self.ratio * b), axis=1)
        return i7, np.abs(i7 - i5), axis


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    box: Sequence[tuple[float, float]],
    rel_tol: float = 1e-6,
    max_evals: int = 10_000_000,
    abs_tol: float = 0.0,
) -> QuadResult:
    """Integrate a vectorized ``f`` over a finite box.

    ``f`` receives points of shape (k, d) and returns k values. Stops once
    the estimated error is at most ``max(abs_tol, rel_tol * |value|)`` or
    when the next refinement would exceed ``max_evals``.
    """
    box = np.asarray(box, dtype=float)
    d = box.shape[0]
    if box.shape != (d, 2) or not 2 <= d <= 4:
        raise ValueError("box must be a list of 2 to 4 (lo, hi) intervals")
    if not np.all(np.isfinite(box)):
        raise ValueError("box intervals must be finite; map unbounded ranges first")
    rule = _Rule(d)
    per_cell = rule.nodes.shape[0]

    centers = (0.5 * (box[:, 0] + box[:, 1]))[None]
    halfw = (0.5 * (box[:, 1] - box[:, 0]))[None]
    val, err, axis = rule.apply(f, centers, halfw)
    evals = per_cell
    while True:
        total, total_err = float(np.sum(val)), float(np.sum(err))
        target = max(abs_tol, rel_tol * abs(total))
        if total_err <= target:
            return QuadResult(total, total_err, evals, True)
        # split the worst cells until their error covers the excess
        order = np.argsort(-err, kind="stable")
        need = total_err - 0.5 * target
        k = int(np.searchsorted(np.cumsum(err[order]), need)) + 1
        k = min(k, len(order))
        if evals + 2 * k * per_cell > max_evals:
            k = (max_evals - evals) // (2 * per_cell)
            if k <= 0:
                return QuadResult(total, total_err, evals, False)
        pick = np.sort(order[:k])
        keep = np.ones(len(val), dtype=bool)
        keep[pick] = False

        c, h, ax = centers[pick], halfw[pick].copy(), axis[pick]
        rows = np.arange(k)
        h[rows, ax] *= 0.5
        left, right = c.copy(), c.copy()
        left[rows, ax] -= h[rows, ax]
        right[rows, ax] += h[rows, ax]
        new_c = np.concatenate([left, right])
        new_h = np.concatenate([h, h])
        v2, e2, a2 = rule.apply(f, new_c, new_h)
        evals += 2 * k * per_cell

        centers = np.concatenate([centers[keep], new_c])
        halfw = np.concatenate([halfw[keep], new_h])
        val = np.concatenate([val[keep], v2])
        err = np.concatenate([err[keep], e2])
        axis = np.concatenate([axis[keep], a2])
