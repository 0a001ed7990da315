"""Explicit union area for disks with remote centers and a common origin.

Neighbouring disks k and k+1 (in counterclockwise order) cut each other
along the chord through the origin. ``alpha[k]`` is the triangle angle at
center k and ``beta[k]`` the angle at center k+1 of the triangle
(origin, center k, center k+1); disk k keeps the area of its circle minus
the two circular segments beyond those chords. Gaps of at least pi
produce no cut.

Everything here is valid only for remote-center configurations; outside
that domain arcsin's principal branch can return the wrong triangle angle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from duk.geometry import (
    DiskConfig,
    GeometryError,
    PolarParams,
    from_polar,
    theta_last,
    to_polar,
)


@dataclass(frozen=True)
class AngleDecomposition:
    alpha: tuple[float, ...]
    beta: tuple[float, ...]


@dataclass(frozen=True)
class WedgeAreas:
    z: tuple[float, ...]


def _pair_angles(ratio, gap):
    """Triangle angles at the near and far center for a pair at ``gap``.

    Returns ``(at_near, at_far)`` where the far center sits at ``ratio``
    times the near radius. Both are zero when ``gap >= pi``.
    """
    ratio = np.asarray(ratio, dtype=float)
    gap = np.asarray(gap, dtype=float)
    open_ = gap < np.pi
    s = np.where(open_, np.sin(gap), 0.0)
    den = np.sqrt(1.0 + ratio * ratio - 2.0 * ratio * np.cos(gap))
    if np.any(open_ & (den == 0.0)):
        raise GeometryError("coincident neighbouring centers")
    den = np.where(den == 0.0, 1.0, den)
    at_near = np.arcsin(np.clip(ratio * s / den, -1.0, 1.0))
    at_far = np.arcsin(np.clip(s / den, -1.0, 1.0))
    return at_near, at_far


def angle_arrays(t, theta):
    """Vectorized alpha/beta for arrays ``t``, ``theta`` of shape (..., n-1).

    Returns ``(alpha, beta)`` of shape (..., n).
    """
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    alpha_k, beta_k = _pair_angles(t, theta)
    ratio_n = np.prod(t, axis=-1)
    gap_n = 2.0 * np.pi - np.sum(theta, axis=-1)
    # closing pair measured from disk 1: its angle is beta_n, disk n's is alpha_n
    beta_n, alpha_n = _pair_angles(ratio_n, gap_n)
    alpha = np.concatenate([alpha_k, alpha_n[..., None]], axis=-1)
    beta = np.concatenate([beta_k, beta_n[..., None]], axis=-1)
    return alpha, beta


def _segment(a):
    # normalized circular segment removed by a chord at half-angle a
    return -a + 0.5 * np.sin(2.0 * a)


def wedge_arrays(t, theta):
    alpha, beta = angle_arrays(t, theta)
    beta_prev = np.roll(beta, 1, axis=-1)
    return np.pi + _segment(alpha) + _segment(beta_prev)


def normalized_area_array(t, theta):
    """V(t; theta) over arrays of shape (..., n-1), n >= 2."""
    t = np.asarray(t, dtype=float)
    z = wedge_arrays(t, theta)
    scale = np.cumprod(t * t, axis=-1)
    return z[..., 0] + np.sum(scale * z[..., 1:], axis=-1)


def angles(params: PolarParams) -> AngleDecomposition:
    if params.n < 2:
        raise GeometryError("angles need at least two disks")
    alpha, beta = angle_arrays(params.t, params.theta)
    return AngleDecomposition(tuple(alpha.tolist()), tuple(beta.tolist()))


def wedge_areas(params: PolarParams) -> WedgeAreas:
    if params.n < 2:
        raise GeometryError("wedge areas need at least two disks")
    return WedgeAreas(tuple(wedge_arrays(params.t, params.theta).tolist()))


def union_area_normalized(params: PolarParams) -> float:
    """Union area in units where the first disk has radius 1."""
    if params.n == 1:
        return math.pi
    return float(normalized_area_array(params.t, params.theta))


def union_area(config: DiskConfig) -> float:
    params = to_polar(config)
    return params.r1 ** 2 * union_area_normalized(params)


def law_of_sines_check(params: PolarParams) -> float:
    """Largest Law-of-Sines discrepancy over the open (gap < pi) triangles."""
    ang = angles(params)
    cs = from_polar(params).centers
    n = params.n
    gaps = list(params.theta) + [theta_last(params)]
    worst = 0.0
    for k in range(n):
        if gaps[k] >= math.pi:
            continue
        near, far = cs[k], cs[(k + 1) % n]
        mid = math.sin(gaps[k]) / (near - far).norm()
        worst = max(
            worst,
            abs(math.sin(ang.alpha[k]) / far.norm() - mid),
            abs(math.sin(ang.beta[k]) / near.norm() - mid),
        )
    return worst
