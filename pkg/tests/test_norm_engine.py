import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar
from app.exceptions import InvalidBallError, NotTangentError, ZeroVectorError
from app.geometry.norm_engine import (
    ball_properties,
    birkhoff_transversal,
    boundary_samples,
    contact_face,
    disks_tangency,
    dist_point_line,
    is_birkhoff_orthogonal,
    max_euclidean_ratio,
    norm,
    support,
    touch_face_with_line,
)
from app.models.ball import INF, Line, LpBall, PolygonBall, Tangency
from tests.conftest import exponents, nonzero_vectors, square_ball, vectors


def test_norm_examples(euclid, l1, linf, square):
    v = (3.0, 4.0)
    assert norm(euclid, v) == pytest.approx(5.0)
    assert norm(l1, v) == pytest.approx(7.0)
    assert norm(linf, v) == pytest.approx(4.0)
    assert norm(square, v) == pytest.approx(4.0)
    assert norm(euclid, (0.0, 0.0)) == 0.0


def test_norm_is_vectorized(euclid):
    values = norm(euclid, np.array([[3.0, 4.0], [0.0, 2.0]]))
    np.testing.assert_allclose(values, [5.0, 2.0])


@given(p=exponents, v=vectors, w=vectors, t=st.floats(-5, 5))
@settings(max_examples=200, deadline=None)
def test_norm_axioms(p, v, w, t):
    B = LpBall(p)
    assert norm(B, v + w) <= norm(B, v) + norm(B, w) + 1e-9
    assert norm(B, t * v) == pytest.approx(abs(t) * norm(B, v), rel=1e-9, abs=1e-9)
    assert norm(B, -v) == pytest.approx(norm(B, v))


@given(v=vectors)
def test_polygon_square_matches_linf(v):
    assert norm(square_ball(), v) == pytest.approx(norm(LpBall(INF), v), abs=1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 5.0])
def test_support_matches_boundary_samples(p):
    B = LpBall(p)
    S = boundary_samples(B, 4096)
    for n in np.random.default_rng(0).normal(size=(20, 2)):
        assert support(B, n) == pytest.approx(float(np.max(S @ n)), abs=1e-4)


def test_support_polygon_is_vertex_max(octagon):
    for n in np.random.default_rng(1).normal(size=(20, 2)):
        assert support(octagon, n) == pytest.approx(float(np.max(octagon.vertex_array @ n)))


def test_support_rejects_zero(euclid):
    with pytest.raises(ZeroVectorError):
        support(euclid, (0.0, 0.0))


def test_contact_face_examples(euclid, l1, linf):
    np.testing.assert_allclose(contact_face(euclid, (3.0, 4.0)).endpoints, [[0.6, 0.8]])
    face = contact_face(linf, (1.0, 0.0))
    assert face.is_segment
    assert face.endpoints == ((1.0, -1.0), (1.0, 1.0))
    face = contact_face(l1, (1.0, 1.0))
    assert face.endpoints == ((0.0, 1.0), (1.0, 0.0))
    assert not contact_face(l1, (1.0, 0.2)).is_segment


@pytest.mark.parametrize("B", [LpBall(1.0), LpBall(1.5), LpBall(2.0), LpBall(4.0), LpBall(INF), PolygonBall.regular(8)])
def test_contact_face_attains_support(B):
    for n in np.random.default_rng(2).normal(size=(50, 2)):
        for e in contact_face(B, n).endpoints:
            assert float(np.dot(n, e)) == pytest.approx(support(B, n), abs=1e-9)
            assert norm(B, e) == pytest.approx(1.0, abs=1e-9)


def test_dist_point_line_examples(euclid, linf):
    x_axis = Line((0.0, 0.0), (1.0, 0.0))
    assert dist_point_line(euclid, (0.0, 2.0), x_axis) == pytest.approx(2.0)
    diagonal = Line((0.0, 0.0), (1.0, -1.0))
    assert dist_point_line(linf, (0.0, 2.0), diagonal) == pytest.approx(1.0)


@pytest.mark.parametrize("B", [LpBall(1.5), LpBall(INF), PolygonBall.regular(6)])
def test_dist_point_line_matches_sampling(B):
    line = Line((1.0, -2.0), (2.0, 1.0))
    z = np.array([-1.0, 3.0])
    p0 = np.asarray(line.point)
    u = line.unit_direction
    res = minimize_scalar(
        lambda t: norm(B, p0 + t * u - z), bounds=(-50.0, 50.0), method="bounded", options={"xatol": 1e-12}
    )
    assert dist_point_line(B, z, line) == pytest.approx(float(res.fun), abs=1e-6)


def test_birkhoff_examples(euclid, linf):
    assert is_birkhoff_orthogonal(euclid, (1.0, 0.0), (0.0, 1.0))
    assert not is_birkhoff_orthogonal(euclid, (1.0, 0.0), (1.0, 1.0))
    # En ℓ∞ la relación no es simétrica
    assert is_birkhoff_orthogonal(linf, (1.0, 1.0), (1.0, 0.0))
    assert not is_birkhoff_orthogonal(linf, (1.0, 0.0), (1.0, 1.0))


@given(x=nonzero_vectors, y=nonzero_vectors, s=st.floats(0.1, 10), t=st.floats(0.1, 10))
@settings(max_examples=100, deadline=None)
def test_birkhoff_is_homogeneous(x, y, s, t):
    B = LpBall(3.0)
    assert is_birkhoff_orthogonal(B, x, y) == is_birkhoff_orthogonal(B, s * x, t * y)


def test_birkhoff_transversal(euclid, l1):
    np.testing.assert_allclose(birkhoff_transversal(euclid, Line((0.0, 0.0), (1.0, 0.0))), [0.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(birkhoff_transversal(l1, Line((0.0, 0.0), (1.0, 1.0))), [-0.5, 0.5])


def test_disks_tangency(euclid):
    assert disks_tangency(euclid, (0.0, 0.0), 1.0, (3.0, 0.0), 2.0) == Tangency.EXTERNAL
    assert disks_tangency(euclid, (0.0, 0.0), 1.0, (1.0, 0.0), 2.0) == Tangency.INTERNAL
    assert disks_tangency(euclid, (0.0, 0.0), 1.0, (5.0, 0.0), 1.0) == Tangency.NONE


def test_touch_face_with_line(linf):
    line = Line((0.0, 1.0), (1.0, 0.0))
    face = touch_face_with_line(linf, (0.0, 0.0), 1.0, line)
    assert face.endpoints == ((-1.0, 1.0), (1.0, 1.0))
    with pytest.raises(NotTangentError):
        touch_face_with_line(linf, (0.0, 0.0), 0.5, line)


def test_ball_properties(euclid, l1, linf, octagon):
    assert ball_properties(euclid) == (True, True)
    assert ball_properties(l1) == (False, False)
    assert ball_properties(linf) == (False, False)
    assert ball_properties(octagon) == (False, False)


def test_max_euclidean_ratio(l1, linf, euclid):
    assert max_euclidean_ratio(l1) == pytest.approx(np.sqrt(2.0))
    assert max_euclidean_ratio(linf) == 1.0
    assert max_euclidean_ratio(euclid) == pytest.approx(1.0)


def test_invalid_balls():
    with pytest.raises(InvalidBallError):
        LpBall(0.5)
    with pytest.raises(InvalidBallError):
        PolygonBall(((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -2.0)))
    with pytest.raises(InvalidBallError):
        PolygonBall.regular(5)


def test_polygon_constructors():
    assert len(PolygonBall.regular(6).vertices) == 6
    ball = PolygonBall.random(8, seed=3)
    assert len(ball.vertices) == 8
    assert PolygonBall.random(8, seed=3) == ball
    assert LpBall(float("inf")).describe() == "lp:inf"
