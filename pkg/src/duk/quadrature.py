"""Reduced integrals for c_2 and c_3.

Integrating out the first radius and the first argument leaves
pi (n-1)! V^-n times the remaining Jacobian. What remains is integrated
over the gap angles and radius ratios, split by which gaps lie below
pi/2 (the sigma pattern). Radius ratios are mapped to a unit interval by
t = u / (1 - u) so unbounded ranges become finite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from duk.closed_form import normalized_area_array
from duk.cubature import QuadResult, integrate_adaptive

__all__ = [
    "C2_PUBLISHED",
    "C3_PUBLISHED",
    "Decomposition",
    "QuadResult",
    "SigmaPattern",
    "TInterval",
    "I3",
    "c2",
    "c2_pieces",
    "c3",
    "decomposition",
    "radial_reduce",
    "t_interval",
]

C2_PUBLISHED = 0.316585
C3_PUBLISHED = 0.033056
C2_TAO_WU = 0.316333
C3_TAO_WU = 0.032939

PI = math.pi


@dataclass(frozen=True)
class SigmaPattern:
    """Which gaps are acute-ish: 1 means the gap is below pi/2."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if any(s not in (0, 1) for s in sigma):
            raise ValueError(f"sigma flags must be 0 or 1, got {self.sigma}")
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def of(cls, gaps) -> "SigmaPattern":
        # a gap of exactly pi/2 belongs to the 0 branch
        return cls(tuple(1 if g < PI / 2 else 0 for g in gaps))

    def __str__(self) -> str:
        return "I(" + ",".join(map(str, self.sigma)) + ")"


@dataclass(frozen=True)
class Decomposition:
    n: int
    terms: tuple[tuple[int, SigmaPattern], ...]

    def __post_init__(self):
        pats = [p for _, p in self.terms]
        if len(set(pats)) != len(pats):
            raise ValueError("patterns in a decomposition must be distinct")
        if any(m <= 0 for m, _ in self.terms):
            raise ValueError("multiplicities must be positive")


_DECOMPOSITIONS = {
    2: ((1, (0, 0)), (2, (1, 0))),
    3: ((1, (0, 0, 0)), (3, (1, 0, 0)), (3, (1, 1, 0))),
    4: ((4, (0, 0, 0, 0)), (4, (1, 1, 0, 0)), (2, (1, 0, 1, 0)), (4, (1, 1, 1, 0))),
    # printed with two terms only; kept as published
    5: ((5, (1, 1, 1, 1, 0)), (1, (1, 1, 1, 1, 1))),
}


def decomposition(n: int) -> Decomposition:
    """Multiplicities of the sigma-pattern integrals summing to c_n.

    Only n = 2 and 3 can be evaluated here; n = 4, 5 are data only since no
    integration limits are known for them.
    """
    if n not in _DECOMPOSITIONS:
        raise ValueError(f"decomposition known for n in 2..5, got {n}")
    return Decomposition(n, tuple((m, SigmaPattern(p)) for m, p in _DECOMPOSITIONS[n]))


def radial_reduce(n: int, V: float) -> float:
    """Integral over theta0 in [0, 2pi) and r > 0 of r^(2n-1) exp(-r^2 V)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not V > 0:
        raise ValueError(f"V must be positive, got {V}")
    return PI * math.factorial(n - 1) * V ** (-n)


@dataclass(frozen=True)
class TInterval:
    """Radius ratios keeping a two-disk pair remote; ``hi`` may be inf."""

    lo: float
    hi: float
    empty: bool = False

    def contains(self, t: float) -> bool:
        return not self.empty and self.lo <= t <= self.hi and t > 0.0


def _t_bounds(theta):
    """Vectorized (lo, hi) for gaps in [pi/3, 5pi/3]; hi is inf on the open range."""
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)
    bounded = (theta < PI / 2) | (theta > 3 * PI / 2)
    with np.errstate(divide="ignore"):
        lo = np.where(bounded, 2.0 * c, 0.0)
        hi = np.where(bounded, 1.0 / (2.0 * c), np.inf)
    # rounding at pi/3 and 5pi/3 can make lo exceed hi by an ulp
    flip = lo > hi
    with np.errstate(invalid="ignore"):
        mid = np.sqrt(np.abs(lo * hi))
    return np.where(flip, mid, lo), np.where(flip, mid, hi)


def t_interval(theta: float) -> TInterval:
    if not 0.0 < theta < 2 * PI:
        raise ValueError(f"gap angle must lie in (0, 2pi), got {theta}")
    if theta < PI / 3 or theta > 5 * PI / 3:
        return TInterval(math.nan, math.nan, empty=True)
    lo, hi = _t_bounds(theta)
    return TInterval(float(lo), float(hi))


def _ratio_from_unit(s, lo, hi):
    """Map s in [0, 1] onto [lo, hi] through t = u / (1 - u); returns (t, dt/ds)."""
    ulo = lo / (1.0 + lo)
    uhi = np.where(np.isinf(hi), 1.0, hi / (1.0 + np.where(np.isinf(hi), 0.0, hi)))
    u = ulo + s * (uhi - ulo)
    one_minus = 1.0 - u
    return u / one_minus, (uhi - ulo) / (one_minus * one_minus)


def _c2_integrand(x):
    theta1, s = x[:, 0], x[:, 1]
    lo, hi = _t_bounds(theta1)
    t2, dt = _ratio_from_unit(s, lo, hi)
    V = normalized_area_array(t2[:, None], theta1[:, None])
    return t2 / V**2 * dt


_C2_RANGES = ((PI / 3, PI / 2), (PI / 2, 3 * PI / 2), (3 * PI / 2, 5 * PI / 3))


def c2_pieces(rel_tol: float = 1e-6, max_evals: int = 10_000_000) -> list[QuadResult]:
    """The three theta1 pieces of c_2, each already multiplied by pi/2."""
    out = []
    for a, b in _C2_RANGES:
        r = integrate_adaptive(_c2_integrand, [(a, b), (0.0, 1.0)], rel_tol, max_evals // 3)
        out.append(
            QuadResult(PI / 2 * r.value, PI / 2 * r.error_estimate, r.evaluations, r.converged)
        )
    return out


def _combine(parts, weights, quadrature_errors: bool) -> QuadResult:
    value = math.fsum(w * p.value for w, p in zip(weights, parts))
    if quadrature_errors:
        err = math.sqrt(math.fsum((w * p.error_estimate) ** 2 for w, p in zip(weights, parts)))
    else:
        err = math.fsum(w * p.error_estimate for w, p in zip(weights, parts))
    return QuadResult(
        value,
        err,
        sum(p.evaluations for p in parts),
        all(p.converged for p in parts),
    )


def c2(rel_tol: float = 1e-6, max_evals: int = 10_000_000) -> QuadResult:
    if rel_tol < 1e-8:
        raise ValueError("rel_tol below 1e-8 is not supported")
    return _combine(c2_pieces(rel_tol, max_evals), (1, 1, 1), quadrature_errors=False)


def _i3_integrand(pattern: tuple[int, ...]):
    first_acute = pattern[0] == 1
    second_acute = pattern[1] == 1

    def f(x):
        theta1 = x[:, 0]
        if second_acute:
            theta2, dtheta2 = x[:, 1], 1.0
        else:
            # theta2 from pi/2 up to 3pi/2 - theta1
            theta2 = PI / 2 + x[:, 1] * (PI - theta1)
            dtheta2 = PI - theta1
        lo2, hi2 = _t_bounds(theta1)
        lo3, hi3 = _t_bounds(theta2)
        t2, dt2 = _ratio_from_unit(x[:, 2], lo2, hi2)
        t3, dt3 = _ratio_from_unit(x[:, 3], lo3, hi3)
        V = normalized_area_array(np.stack([t2, t3], axis=1), np.stack([theta1, theta2], axis=1))
        return t2**3 * t3 / V**3 * dt2 * dt3 * dtheta2

    theta1_range = (PI / 3, PI / 2) if first_acute else (PI / 2, PI)
    theta2_range = (PI / 3, PI / 2) if second_acute else (0.0, 1.0)
    return f, [theta1_range, theta2_range, (0.0, 1.0), (0.0, 1.0)]


SUPPORTED_I3 = ((1, 1, 0), (1, 0, 0), (0, 0, 0))


def I3(pattern, rel_tol: float = 1e-4, max_evals: int = 30_000_000) -> QuadResult:
    """One sigma-pattern contribution to c_3, prefactor 2pi/3 included."""
    sigma = tuple(pattern.sigma if isinstance(pattern, SigmaPattern) else pattern)
    if sigma not in SUPPORTED_I3:
        raise ValueError(f"no integration limits for pattern {sigma}; supported: {SUPPORTED_I3}")
    if rel_tol < 1e-6:
        raise ValueError("rel_tol below 1e-6 is not supported")
    f, box = _i3_integrand(sigma)
    r = integrate_adaptive(f, box, rel_tol, max_evals)
    k = 2 * PI / 3
    return QuadResult(k * r.value, k * r.error_estimate, r.evaluations, r.converged)


def c3(rel_tol: float = 1e-4, max_evals: int = 100_000_000, parts: Optional[dict] = None) -> QuadResult:
    """c_3 = I(0,0,0) + 3 I(1,0,0) + 3 I(1,1,0).

    If ``parts`` is a dict it receives the individual pattern results.
    """
    if rel_tol < 1e-6:
        raise ValueError("rel_tol below 1e-6 is not supported")
    results, weights = [], []
    for mult, pat in decomposition(3).terms:
        r = I3(pat, rel_tol, max_evals // 3)
        results.append(r)
        weights.append(mult)
        if parts is not None:
            parts[str(pat)] = r
    return _combine(results, weights, quadrature_errors=True)
