"""Pytest configuration and shared fixtures."""

import pytest
import sys
from pathlib import Path

# Add the project root to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.metric import build_euclidean, build_instance, build_matrix  # noqa: E402
from src.models.sinr import SINRParams  # noqa: E402

# Configure pytest
pytest_plugins = []


def collinear_instance(lengths, spacing=1000.0):
    """Links laid out along the x-axis, far enough apart to barely interfere."""
    points = []
    for i, length in enumerate(lengths):
        points.append([i * spacing, 0.0])
        points.append([i * spacing + length, 0.0])
    return build_instance(build_euclidean(points), [(2 * i, 2 * i + 1) for i in range(len(lengths))])


@pytest.fixture
def unit_params():
    """alpha=2, beta=1, no noise: the textbook parameters used in hand calculations."""
    return SINRParams(alpha=2.0, beta=1.0, noise=0.0)


@pytest.fixture
def unit_pair():
    """Two unit links whose cross-distances are both 10 (points s1, r1, s2, r2)."""
    table = [
        [0, 1, 10, 10],
        [1, 0, 10, 10],
        [10, 10, 0, 1],
        [10, 10, 1, 0],
    ]
    return build_instance(build_matrix(table), [(0, 1), (2, 3)])


@pytest.fixture
def crossing_pair():
    """Two length-4 links whose senders sit next to each other's receiver."""
    space = build_euclidean([[0, 0], [4, 0], [4, 1], [0, 1]])
    return build_instance(space, [(0, 1), (2, 3)])


@pytest.fixture
def single_link():
    return build_instance(build_euclidean([[0, 0], [1, 0]]), [(0, 1)])


@pytest.fixture
def make_collinear():
    return collinear_instance


@pytest.fixture
def touching_pair():
    """Link 0 = (0,0)->(1,0); link 1 sends from link 0's receiver to (3,0)."""
    space = build_euclidean([[0, 0], [1, 0], [3, 0]])
    return build_instance(space, [(0, 1), (1, 2)])
