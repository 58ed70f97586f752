from pathlib import Path

import pytest

from complex_core import from_facets
from constructions import cross_polytope_boundary, simplex_boundary, switch_ball_boundary
from homology import FieldSpec

DATA_DIR = Path(__file__).parent / "data"

RP2_FACETS = [
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
]


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def tetrahedron():
    """Boundary of the 3-simplex."""
    return simplex_boundary(3)


@pytest.fixture
def octahedron():
    return cross_polytope_boundary(3)


@pytest.fixture
def rp2():
    return from_facets(RP2_FACETS)


@pytest.fixture
def torus():
    """The 8-vertex torus bounding the ball B(1, 4)."""
    return switch_ball_boundary(1, 4)


@pytest.fixture
def three_triangles():
    return from_facets([(0, 1, 2), (0, 1, 3), (0, 1, 4)])


@pytest.fixture
def qq():
    return FieldSpec.rationals()


@pytest.fixture
def gf2():
    return FieldSpec.gf(2)
