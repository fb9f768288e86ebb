from pathlib import Path
import numpy as np
import pytest
from hypothesis import strategies as st
from app.models.ball import INF, LpBall, PolygonBall

SCENES = Path(__file__).resolve().parent.parent / "scenes"

coords = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False, allow_subnormal=False)
vectors = st.tuples(coords, coords).map(np.array)
nonzero_vectors = vectors.filter(lambda v: np.hypot(*v) > 1e-3)
exponents = st.floats(min_value=1.1, max_value=8.0, allow_nan=False)


def square_ball() -> PolygonBall:
    """Cuadrado [−1, 1]², la misma norma que ℓ∞."""
    return PolygonBall(((1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)))


@pytest.fixture
def euclid():
    return LpBall(2.0)


@pytest.fixture
def linf():
    return LpBall(INF)


@pytest.fixture
def l1():
    return LpBall(1.0)


@pytest.fixture
def octagon():
    return PolygonBall.regular(8)


@pytest.fixture
def square():
    return square_ball()


@pytest.fixture(params=[1.5, 2.0, 3.0], ids=lambda p: f"lp{p:g}")
def strict_ball(request):
    return LpBall(request.param)


@pytest.fixture(params=["l1", "linf", "octagon"])
def flat_ball(request):
    return {"l1": LpBall(1.0), "linf": LpBall(INF), "octagon": PolygonBall.regular(8)}[request.param]


@pytest.fixture
def scenes_dir() -> Path:
    return SCENES
