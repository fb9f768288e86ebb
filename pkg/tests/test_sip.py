import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from app.exceptions import InvalidBallError, SingularMapError, ZeroVectorError
from app.geometry.norm_engine import norm
from app.geometry.sip import (
    adjoint_nonlinearity_witness,
    duality_map,
    form_properties,
    generalized_adjoint,
    inverse_duality,
    is_self_adjoint,
    is_square_operator,
    projective_conic_zeros,
    sip,
    sip_summary,
)
from app.models.ball import INF
from app.models.operator import LinearMap2, SipSpace
from tests.conftest import exponents, nonzero_vectors, vectors

SHEAR = LinearMap2(((1.0, 1.0), (0.0, 1.0)))
FLIP = LinearMap2(((1.0, 0.0), (0.0, -1.0)))
matrices = st.tuples(*[st.floats(-3, 3, allow_nan=False)] * 4).map(lambda t: LinearMap2.from_flat(*t))


def test_space_requires_smooth_lp():
    for p in (1.0, INF):
        with pytest.raises(InvalidBallError):
            SipSpace.lp(p)
    assert SipSpace.lp(3.0).q == pytest.approx(1.5)


def test_euclidean_sip_is_dot_product():
    space = SipSpace.lp(2.0)
    assert sip(space, (1.0, 2.0), (3.0, -1.0)) == pytest.approx(1.0)
    assert sip(space, (1.0, 2.0), (0.0, 0.0)) == 0.0


@given(p=exponents, x=vectors, y=vectors, z=vectors, a=st.floats(-4, 4), b=st.floats(-4, 4))
@settings(max_examples=200, deadline=None)
def test_sip_axioms(p, x, y, z, a, b):
    space = SipSpace.lp(p)
    scale = 1.0 + np.hypot(*x) * (np.hypot(*y) + np.hypot(*z)) * (1.0 + abs(a) + abs(b))
    # Lineal en el primer argumento, homogéneo en el segundo
    lhs = sip(space, a * y + b * z, x)
    assert lhs == pytest.approx(a * sip(space, y, x) + b * sip(space, z, x), abs=1e-9 * scale)
    assert sip(space, y, a * x) == pytest.approx(a * sip(space, y, x), abs=1e-9 * scale)
    assert sip(space, x, x) == pytest.approx(float(norm(space.ball, x)) ** 2, abs=1e-9 * scale)
    # Cauchy–Schwarz
    bound = float(norm(space.ball, x) * norm(space.ball, y))
    assert abs(sip(space, y, x)) <= bound * (1.0 + 1e-12) + 1e-12


@given(p=exponents, x=nonzero_vectors)
@settings(max_examples=100, deadline=None)
def test_duality_map_inverts(p, x):
    space = SipSpace.lp(p)
    J = duality_map(space, x)
    assert float(J @ x) == pytest.approx(float(norm(space.ball, x)) ** 2, rel=1e-9)
    np.testing.assert_allclose(inverse_duality(space, J), x, rtol=1e-8, atol=1e-10)


def test_duality_map_rejects_zero():
    with pytest.raises(ZeroVectorError):
        duality_map(SipSpace.lp(3.0), (0.0, 0.0))


@given(p=exponents, A=matrices, x=vectors, y=nonzero_vectors)
@settings(max_examples=100, deadline=None)
def test_generalized_adjoint_identity(p, A, x, y):
    space = SipSpace.lp(p)
    lhs = sip(space, A(x), y)
    rhs = sip(space, x, generalized_adjoint(space, A, y))
    scale = 1.0 + A.opnorm * np.hypot(*x) * np.hypot(*y)
    assert lhs == pytest.approx(rhs, abs=1e-8 * scale)


def test_self_adjointness(strict_ball):
    space = SipSpace(strict_ball)
    assert is_self_adjoint(space, LinearMap2(((3.0, 0.0), (0.0, 3.0))))
    assert not is_self_adjoint(space, SHEAR)


def test_symmetric_matrix_is_self_adjoint_only_when_euclidean():
    symmetric = LinearMap2(((2.0, 1.0), (1.0, 2.0)))
    assert is_self_adjoint(SipSpace.lp(2.0), symmetric)
    assert not is_self_adjoint(SipSpace.lp(3.0), symmetric)


def test_adjoint_nonlinearity_witness():
    assert adjoint_nonlinearity_witness(SipSpace.lp(2.0), SHEAR, seed=1) is None
    witness = adjoint_nonlinearity_witness(SipSpace.lp(3.0), SHEAR, seed=1)
    assert witness is not None
    assert witness.defect > 1e-3


def test_projective_conic_zeros(strict_ball):
    space = SipSpace(strict_ball)
    np.testing.assert_allclose(projective_conic_zeros(space, FLIP), [np.pi / 4, 3 * np.pi / 4], atol=1e-8)
    assert projective_conic_zeros(space, LinearMap2(((1.0, 0.0), (0.0, 1.0)))) == []


def test_projective_conic_zeros_are_scale_invariant():
    space = SipSpace.lp(4.0)
    A = LinearMap2(((1.0, 2.0), (0.5, -1.0)))
    np.testing.assert_allclose(projective_conic_zeros(space, A), projective_conic_zeros(space, A.scaled(7.5)))


def test_projective_conic_zeros_rejects_singular():
    with pytest.raises(SingularMapError):
        projective_conic_zeros(SipSpace.lp(2.0), LinearMap2(((1.0, 2.0), (2.0, 4.0))))


def test_form_properties():
    props = form_properties(SipSpace.lp(3.0), LinearMap2(((1.0, 0.0), (0.0, 1.0))), seed=3)
    assert props.linearity_first <= 1e-9
    assert props.homogeneity_second <= 1e-9
    assert props.additivity_second > 1e-3
    assert props.symmetry > 1e-3
    euclid = form_properties(SipSpace.lp(2.0), LinearMap2(((1.0, 0.0), (0.0, 1.0))), seed=3)
    assert euclid.additivity_second <= 1e-9
    assert euclid.symmetry <= 1e-9


def test_square_operator():
    space = SipSpace.lp(3.0)
    root = LinearMap2(((2.0, 0.0), (0.0, 2.0)))
    assert is_square_operator(space, LinearMap2(((4.0, 0.0), (0.0, 4.0))), root)
    assert not is_square_operator(space, LinearMap2(((4.0, 1.0), (0.0, 4.0))), root)


def test_sip_summary_is_deterministic():
    space = SipSpace.lp(3.0)
    first = sip_summary(space, SHEAR, seed=7)
    assert first == sip_summary(space, SHEAR, seed=7)
    assert not first.self_adjoint
    assert first.witness is not None
