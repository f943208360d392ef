import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from soddyline import Triangle

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def t345() -> Triangle:
    """Right triangle with integer vertex-circle radii (1, 2, 3)."""
    return Triangle((0.0, 0.0), (3.0, 0.0), (0.0, 4.0))


@pytest.fixture
def t_flat() -> Triangle:
    """Isoceles triangle whose outer tangent solution is the line y = -1."""
    return Triangle((-1.0, 0.0), (1.0, 0.0), (0.0, -0.75))


@pytest.fixture
def t_equilateral() -> Triangle:
    return Triangle.from_sides(2.0, 2.0, 2.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240814)
