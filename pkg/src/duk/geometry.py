"""Disk configurations through a common origin and their polar parametrization.

A disk is identified by its center; its radius is the center's norm, so
every boundary passes through the origin. The polar form describes n
centers by the first radius ``r1``, the first argument ``theta0``, the
consecutive radius ratios ``t[k] = r[k+1] / r[k]`` and the counterclockwise
gaps ``theta[k]`` between consecutive centers.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
ARG_TIE_TOL = 1e-12


class GeometryError(ValueError):
    """Raised for configurations that violate a geometric precondition."""


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError(f"non-finite coordinates ({self.x}, {self.y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def arg(self) -> float:
        """Counterclockwise angle from the positive x-axis, in [0, 2pi)."""
        a = math.atan2(self.y, self.x)
        if a < 0.0:
            a += TWO_PI
        if a >= TWO_PI:
            a = 0.0
        return a

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def scaled(self, c: float) -> "Vec2":
        return Vec2(c * self.x, c * self.y)

    def rotated(self, phi: float) -> "Vec2":
        c, s = math.cos(phi), math.sin(phi)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)


@dataclass(frozen=True)
class DiskConfig:
    """Ordered disk centers; disk j has radius ``|centers[j]|``."""

    centers: tuple[Vec2, ...]

    def __post_init__(self):
        centers = tuple(c if isinstance(c, Vec2) else Vec2(*c) for c in self.centers)
        if not centers:
            raise GeometryError("a configuration needs at least one disk")
        for j, c in enumerate(centers):
            if c.norm_sq() == 0.0:
                raise GeometryError(f"center {j} is the origin")
        object.__setattr__(self, "centers", centers)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "DiskConfig":
        return cls(tuple(Vec2(float(x), float(y)) for x, y in pairs))

    @classmethod
    def from_json(cls, text: str) -> "DiskConfig":
        data = json.loads(text)
        if not isinstance(data, list) or not all(
            isinstance(p, list) and len(p) == 2 for p in data
        ):
            raise ValueError("expected a JSON array of [x, y] pairs")
        return cls.from_pairs(data)

    def to_pairs(self) -> list[list[float]]:
        return [[c.x, c.y] for c in self.centers]

    def to_json(self) -> str:
        # repr of a float is the shortest round-trip form, which json uses
        return json.dumps(self.to_pairs())

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def radii(self) -> tuple[float, ...]:
        return tuple(c.norm() for c in self.centers)

    def as_array(self) -> np.ndarray:
        return np.array(self.to_pairs(), dtype=float)

    def scaled(self, c: float) -> "DiskConfig":
        return DiskConfig(tuple(v.scaled(c) for v in self.centers))

    def rotated(self, phi: float) -> "DiskConfig":
        return DiskConfig(tuple(v.rotated(phi) for v in self.centers))

    def permuted(self, order: Sequence[int]) -> "DiskConfig":
        return DiskConfig(tuple(self.centers[i] for i in order))


@dataclass(frozen=True)
class PolarParams:
    r1: float
    theta0: float
    t: tuple[float, ...] = ()
    theta: tuple[float, ...] = ()

    def __post_init__(self):
        t = tuple(float(v) for v in self.t)
        theta = tuple(float(v) for v in self.theta)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "r1", float(self.r1))
        object.__setattr__(self, "theta0", float(self.theta0))
        if len(t) != len(theta):
            raise GeometryError("t and theta must have the same length (n - 1)")
        if not (self.r1 > 0.0 and math.isfinite(self.r1)):
            raise GeometryError(f"r1 must be positive, got {self.r1}")
        if not 0.0 <= self.theta0 < TWO_PI:
            raise GeometryError(f"theta0 must lie in [0, 2pi), got {self.theta0}")
        if any(not (v > 0.0 and math.isfinite(v)) for v in t):
            raise GeometryError(f"ratios must be positive, got {t}")
        if any(not v > 0.0 for v in theta):
            raise GeometryError(f"gap angles must be positive, got {theta}")
        if math.fsum(theta) >= TWO_PI:
            raise GeometryError("gap angles must sum to less than 2pi")

    @property
    def n(self) -> int:
        return len(self.t) + 1


def _compare_centers(a: Vec2, b: Vec2) -> int:
    da, db = a.arg(), b.arg()
    if abs(da - db) > ARG_TIE_TOL:
        return -1 if da < db else 1
    na, nb = a.norm_sq(), b.norm_sq()
    return (na > nb) - (na < nb)


def argument_order(config: DiskConfig) -> list[int]:
    """Indices of ``config.centers`` in increasing argument, ties by norm."""
    key = functools.cmp_to_key(lambda i, j: _compare_centers(config.centers[i], config.centers[j]))
    return sorted(range(config.n), key=key)


def sort_by_argument(config: DiskConfig) -> DiskConfig:
    return config.permuted(argument_order(config))


def is_remote(config: DiskConfig) -> bool:
    """True iff no disk contains (or has on its boundary) another disk's center."""
    cs = config.centers
    for i, ci in enumerate(cs):
        for j, cj in enumerate(cs):
            if i != j and (ci - cj).norm_sq() <= cj.norm_sq():
                return False
    return True


def is_remote_array(centers: np.ndarray) -> np.ndarray:
    """Vectorized :func:`is_remote` over an array of shape (..., n, 2)."""
    diff = centers[..., :, None, :] - centers[..., None, :, :]
    d2 = np.einsum("...ijk,...ijk->...ij", diff, diff)
    r2 = np.einsum("...jk,...jk->...j", centers, centers)
    n = centers.shape[-2]
    ok = d2 > np.maximum(r2[..., :, None], r2[..., None, :])
    ok |= np.eye(n, dtype=bool)
    return ok.all(axis=(-2, -1))


def _ccw_gap(a: Vec2, b: Vec2) -> float:
    g = math.atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y)
    return g + TWO_PI if g < 0.0 else g


def to_polar(config: DiskConfig) -> PolarParams:
    """Polar parameters of a configuration whose centers run counterclockwise.

    The centers must appear in counterclockwise order going once around the
    origin (any starting disk is allowed). Anything else raises
    :class:`GeometryError`; use :func:`sort_by_argument` first.
    """
    cs = config.centers
    gaps = []
    for a, b in zip(cs, cs[1:]):
        g = _ccw_gap(a, b)
        if g <= 0.0 or g >= TWO_PI:
            raise GeometryError("centers share an argument; gaps must be positive")
        gaps.append(g)
    if math.fsum(gaps) >= TWO_PI:
        raise GeometryError("centers are not sorted by argument")
    norms = [c.norm() for c in cs]
    t = tuple(b / a for a, b in zip(norms, norms[1:]))
    return PolarParams(norms[0], cs[0].arg(), t, tuple(gaps))


def from_polar(params: PolarParams) -> DiskConfig:
    r, phi = params.r1, params.theta0
    centers = [Vec2(r * math.cos(phi), r * math.sin(phi))]
    for tk, gk in zip(params.t, params.theta):
        r *= tk
        phi += gk
        centers.append(Vec2(r * math.cos(phi), r * math.sin(phi)))
    return DiskConfig(tuple(centers))


def theta_last(params: PolarParams) -> float:
    """The closing gap between the last and the first center."""
    return TWO_PI - math.fsum(params.theta)


def jacobian(params: PolarParams) -> float:
    """Absolute Jacobian determinant of :func:`from_polar` in (r1, theta0, t, theta)."""
    n = params.n
    out = params.r1 ** (2 * n - 1)
    for k, tk in enumerate(params.t, start=2):
        out *= tk ** (2 * (n - k) + 1)
    return out
