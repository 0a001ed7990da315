import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from duk.geometry import (
    DiskConfig,
    GeometryError,
    PolarParams,
    Vec2,
    from_polar,
    is_remote,
    is_remote_array,
    jacobian,
    sort_by_argument,
    theta_last,
    to_polar,
)

PI = math.pi


def cfg(*pairs):
    return DiskConfig.from_pairs(pairs)


def fd_jacobian_det(params, h=1e-6):
    """|det| of the central-difference Jacobian of from_polar in (r1, theta0, t, theta)."""
    n = params.n

    def flat(x):
        p = PolarParams(x[0], x[1] % (2 * PI), tuple(x[2 : 1 + n]), tuple(x[1 + n :]))
        return np.array(from_polar(p).to_pairs()).ravel()

    x0 = np.array([params.r1, params.theta0, *params.t, *params.theta])
    cols = []
    for i in range(len(x0)):
        step = h * max(1.0, abs(x0[i]))
        xp, xm = x0.copy(), x0.copy()
        xp[i] += step
        xm[i] -= step
        cols.append((flat(xp) - flat(xm)) / (2 * step))
    return abs(np.linalg.det(np.column_stack(cols)))


@st.composite
def polar_params(draw, n_min=1, n_max=6):
    n = draw(st.integers(n_min, n_max))
    r1 = draw(st.floats(0.1, 10.0))
    theta0 = draw(st.floats(0.0, 2 * PI, exclude_max=True))
    t = draw(st.lists(st.floats(0.2, 5.0), min_size=n - 1, max_size=n - 1))
    w = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    theta = [2 * PI * wi / sum(w) for wi in w[:-1]]
    return PolarParams(r1, theta0, tuple(t), tuple(theta))


def test_vec2_rejects_non_finite():
    with pytest.raises(GeometryError):
        Vec2(math.nan, 0.0)
    with pytest.raises(GeometryError):
        Vec2(0.0, math.inf)


def test_config_rejects_origin_and_empty():
    with pytest.raises(GeometryError):
        cfg((1, 0), (0, 0))
    with pytest.raises(GeometryError):
        DiskConfig(())


def test_json_round_trip():
    c = cfg((1.0, 0.0), (0.1, 1 / 3))
    assert c.to_json() == "[[1.0, 0.0], [0.1, 0.3333333333333333]]"
    assert DiskConfig.from_json(c.to_json()) == c
    assert json.loads(c.to_json()) == [[1.0, 0.0], [0.1, 1 / 3]]


@pytest.mark.parametrize(
    "given_pairs, expected",
    [
        ([(0, 1), (1, 0)], [(1, 0), (0, 1)]),
        ([(1, 0)], [(1, 0)]),
        # atan2: 3pi/4, pi/4, 7pi/4 (after wrapping -pi/4)
        ([(-1, 1), (1, 1), (1, -1)], [(1, 1), (-1, 1), (1, -1)]),
    ],
)
def test_sort_by_argument(given_pairs, expected):
    assert sort_by_argument(cfg(*given_pairs)) == cfg(*expected)


def test_sort_ties_broken_by_norm():
    assert sort_by_argument(cfg((2, 2), (1, 1), (0, 1))) == cfg((1, 1), (2, 2), (0, 1))


def test_is_remote_examples():
    assert is_remote(cfg((1, 0), (0, 1)))
    assert not is_remote(cfg((1, 0), (1.9, 0)))
    th = 5 * PI / 12
    t = 2 * math.cos(th)
    # exactly on the boundary the distance equals the radius: not remote
    assert not is_remote(cfg((1, 0), (t * math.cos(th), t * math.sin(th))))
    t *= 1 + 1e-9
    assert is_remote(cfg((1, 0), (t * math.cos(th), t * math.sin(th))))


def test_is_remote_array_matches_scalar():
    rng = np.random.default_rng(3)
    centers = rng.uniform(-2, 2, size=(500, 3, 2))
    vec = is_remote_array(centers)
    scalar = [is_remote(DiskConfig.from_pairs(c)) for c in centers]
    assert vec.tolist() == scalar
    assert 0 < vec.sum() < 500


@given(
    st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=1, max_size=5).filter(
        lambda ps: all(x * x + y * y > 1e-6 for x, y in ps)
    ),
    st.permutations(range(5)),
    st.floats(0.1, 10.0),
)
def test_is_remote_permutation_and_scale_invariant(pairs, perm, c):
    config = cfg(*pairs)
    order = [i for i in perm if i < config.n]
    assert is_remote(config.permuted(order)) == is_remote(config)
    # scaling by a power of two is exact in floating point
    assert is_remote(config.scaled(2.0)) == is_remote(config)
    if is_remote(config):
        # away from the boundary any positive scale preserves the answer
        assert is_remote(config.scaled(c)) or not is_remote(config.scaled(1.0 + 1e-9))


def test_to_polar_examples():
    p = to_polar(cfg((1, 0), (0, 1)))
    assert (p.r1, p.theta0) == (1.0, 0.0)
    assert p.t == pytest.approx((1.0,))
    assert p.theta == pytest.approx((PI / 2,))

    p = to_polar(cfg((2, 0)))
    assert (p.r1, p.theta0, p.t, p.theta) == (2.0, 0.0, (), ())

    p = to_polar(cfg((1, 0), (0, 2), (-3, 0)))
    assert p.t == pytest.approx((2.0, 1.5), rel=1e-15)
    assert p.theta == pytest.approx((PI / 2, PI / 2), rel=1e-15)


def test_to_polar_rejects_unsorted_and_shared_arguments():
    with pytest.raises(GeometryError):
        to_polar(cfg((0, 1), (1, 0), (-1, 0)))
    with pytest.raises(GeometryError):
        to_polar(cfg((1, 0), (2, 0)))


def test_to_polar_accepts_cyclic_start():
    # counterclockwise order starting from a disk that is not the first by argument
    p = to_polar(cfg((0, -1), (1, 0), (0, 1)))
    assert p.theta0 == pytest.approx(3 * PI / 2)
    assert p.theta == pytest.approx((PI / 2, PI / 2))


def test_from_polar_examples():
    c = from_polar(PolarParams(1, 0, (1,), (PI / 2,)))
    np.testing.assert_allclose(c.to_pairs(), [[1, 0], [0, 1]], atol=1e-15)
    c = from_polar(PolarParams(2, PI))
    np.testing.assert_allclose(c.to_pairs(), [[-2, 0]], atol=1e-15)
    c = from_polar(PolarParams(1, 0, (2, 1.5), (PI / 2, PI / 2)))
    np.testing.assert_allclose(c.to_pairs(), [[1, 0], [0, 2], [-3, 0]], atol=1e-15)


def test_polar_params_invariants():
    with pytest.raises(GeometryError):
        PolarParams(1, 0, (1, 1), (PI, PI))
    with pytest.raises(GeometryError):
        PolarParams(0, 0)
    with pytest.raises(GeometryError):
        PolarParams(1, 0, (-1,), (1,))
    with pytest.raises(GeometryError):
        PolarParams(1, 2 * PI)


def test_theta_last_examples():
    assert theta_last(PolarParams(1, 0, (1,), (PI / 2,))) == pytest.approx(3 * PI / 2)
    assert theta_last(PolarParams(1, 0, (1, 1), (PI / 2, PI / 2))) == pytest.approx(PI)
    assert theta_last(PolarParams(1, 0)) == 2 * PI


@given(polar_params())
def test_theta_last_closes_circle(p):
    assert abs(theta_last(p) + math.fsum(p.theta) - 2 * PI) <= 1e-12


def test_jacobian_examples():
    assert jacobian(PolarParams(2, 0, (0.5,), (1.0,))) == 4.0
    assert jacobian(PolarParams(3, 0)) == 3.0
    p = PolarParams(1, 0.3, (2, 0.5), (1.0, 2.0))
    assert jacobian(p) == 4.0
    assert fd_jacobian_det(p) == pytest.approx(4.0, rel=1e-6)


@given(polar_params())
def test_round_trip(p):
    q = to_polar(from_polar(p))
    assert q.r1 == pytest.approx(p.r1, rel=1e-10)
    # theta0 near 2pi may come back as a tiny angle
    d0 = (q.theta0 - p.theta0 + PI) % (2 * PI) - PI
    assert abs(d0) <= 1e-10 * 2 * PI
    assert q.t == pytest.approx(p.t, rel=1e-10)
    assert q.theta == pytest.approx(p.theta, rel=1e-10)


@given(polar_params(2, 4))
def test_jacobian_matches_finite_differences(p):
    assert fd_jacobian_det(p) == pytest.approx(jacobian(p), rel=1e-6)
