import numpy as np
import pytest

from baran_spectral.domains import (
    ChartPoint,
    DomainError,
    as_point,
    ball,
    boundary_distance,
    interior_grid,
    random_interior_point,
    random_tangent,
    simplex,
    sphere,
)


def test_domain_invariants():
    assert ball(1).n == 1
    assert sphere(2).n == 2
    with pytest.raises(ValueError):
        ball(0)
    with pytest.raises(ValueError):
        sphere(1)
    with pytest.raises(ValueError):
        ball(2).__class__("cube", 2)


def test_point_validation_ball():
    d = ball(2)
    as_point(d, [0.3, -0.4])
    with pytest.raises(DomainError, match=r"\|x\| < 1"):
        as_point(d, [1.0, 0.0])
    with pytest.raises(DomainError, match=r"\|x\| < 1"):
        as_point(d, [0.9, 0.9])


def test_point_validation_simplex():
    d = simplex(2)
    as_point(d, [0.2, 0.3])
    with pytest.raises(DomainError, match="x_i > 0"):
        as_point(d, [0.0, 0.3])
    with pytest.raises(DomainError, match=r"sum\(x\) < 1"):
        as_point(d, [0.5, 0.5])


def test_point_validation_sphere():
    d = sphere(3)
    as_point(d, [0.0, 0.0, 1.0])
    with pytest.raises(DomainError, match=r"\|x\| = 1"):
        as_point(d, [0.0, 0.0, 0.9])
    with pytest.raises(DomainError, match="coordinates"):
        as_point(d, [0.0, 1.0])


def test_chart_point_carries_domain():
    d = ball(2)
    p = ChartPoint.of(d, [0.1, 0.2])
    assert p.domain == d
    np.testing.assert_allclose(p.array, [0.1, 0.2])
    with pytest.raises(DomainError, match="belongs"):
        as_point(simplex(2), p)


def test_boundary_distance():
    assert boundary_distance(ball(2), [0.0, 0.0]) == pytest.approx(1.0)
    assert boundary_distance(ball(2), [0.6, 0.0]) == pytest.approx(0.4)
    assert boundary_distance(simplex(2), [0.1, 0.2]) == pytest.approx(0.1)


def test_random_points_respect_margin():
    rng = np.random.default_rng(0)
    for d in (ball(3), simplex(3)):
        for _ in range(50):
            x = random_interior_point(d, rng, margin=0.05)
            assert boundary_distance(d, x) >= 0.049
    for _ in range(10):
        x = random_interior_point(sphere(3), rng)
        assert abs(np.linalg.norm(x) - 1.0) < 1e-12
        v = random_tangent(sphere(3), x, rng)
        assert abs(np.dot(v, x)) < 1e-12
        assert np.linalg.norm(v) == pytest.approx(1.0)


def test_interior_grid_stays_interior():
    g = interior_grid(ball(2), 20)
    assert np.all(np.linalg.norm(g, axis=1) <= 1.0 - 1e-3 + 1e-15)
    g = interior_grid(simplex(2), 20)
    assert np.all(g > 0) and np.all(g.sum(axis=1) <= 1 - 1e-3 + 1e-15)
    g = interior_grid(sphere(3), 10)
    np.testing.assert_allclose(np.linalg.norm(g, axis=1), 1.0, atol=1e-12)
