"""Construction and validation of metric spaces and link instances."""

import math
from typing import Iterable, Sequence, Tuple

import numpy as np

from config.settings import METRIC_TOLERANCE
from src.models.errors import InstanceFormatError, MetricValidationError
from src.models.network import Instance, Link, MetricSpace
from src.utils.logger import get_logger

logger = get_logger(__name__)


def build_euclidean(points: Sequence[Sequence[float]]) -> MetricSpace:
    """
    Build a planar Euclidean space.

    Args:
        points: 2D coordinates

    Returns:
        MetricSpace of kind euclidean2d
    """
    if len(points) == 0:
        raise InstanceFormatError("points", "at least one point is required")

    coords = []
    for i, point in enumerate(points):
        if len(point) != 2:
            raise InstanceFormatError(f"points[{i}]", f"expected 2 coordinates, got {len(point)}")
        x, y = float(point[0]), float(point[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InstanceFormatError(f"points[{i}]", "coordinates must be finite")
        coords.append((x, y))

    return MetricSpace(kind="euclidean2d", points=tuple(coords))


def build_matrix(table: Sequence[Sequence[float]], tolerance: float = METRIC_TOLERANCE) -> MetricSpace:
    """
    Build a general metric space from a distance table, validating every axiom.

    Args:
        table: Square table of non-negative lengths
        tolerance: Additive slack on the triangle inequality

    Returns:
        Validated MetricSpace of kind matrix

    Raises:
        InstanceFormatError: table is not square or has invalid entries
        MetricValidationError: first violated axiom with its witness indices
    """
    size = len(table)
    if size == 0:
        raise InstanceFormatError("d", "distance table is empty")
    for i, row in enumerate(table):
        if len(row) != size:
            raise InstanceFormatError(f"d[{i}]", f"expected {size} entries, got {len(row)}")

    d = np.array(table, dtype=float)
    if not np.all(np.isfinite(d)):
        raise InstanceFormatError("d", "distances must be finite")

    negative = np.argwhere(d < 0)
    if len(negative):
        i, j = (int(v) for v in negative[0])
        raise MetricValidationError("non-negativity", (i, j), f"d = {d[i, j]}")

    diagonal = np.flatnonzero(np.diag(d) != 0)
    if len(diagonal):
        i = int(diagonal[0])
        raise MetricValidationError("identity", (i, i), f"d = {d[i, i]}")

    asymmetric = np.argwhere(d != d.T)
    if len(asymmetric):
        i, j = (int(v) for v in asymmetric[0])
        raise MetricValidationError("symmetry", (i, j), f"{d[i, j]} != {d[j, i]}")

    witness = _find_triangle_violation(d, tolerance)
    if witness is not None:
        x, y, z = witness
        raise MetricValidationError(
            "triangle inequality", witness,
            f"{d[x, z]} > {d[x, y]} + {d[y, z]}"
        )

    return MetricSpace(kind="matrix", distances=tuple(tuple(float(v) for v in row) for row in d))


def _find_triangle_violation(d: np.ndarray, tolerance: float):
    """Return the first (x, y, z) with d(x, z) > d(x, y) + d(y, z) + tolerance, or None."""
    size = len(d)
    for y in range(size):
        # via[x, z] = d(x, y) + d(y, z)
        via = d[:, y][:, None] + d[y, :][None, :]
        bad = np.argwhere(d > via + tolerance)
        if len(bad):
            x, z = (int(v) for v in bad[0])
            return (x, y, z)
    return None


def distance(space: MetricSpace, a: int, b: int) -> float:
    """
    Distance between two points of a space.

    Args:
        space: Metric space
        a: Point index
        b: Point index

    Returns:
        d(a, b)
    """
    size = space.size
    for index in (a, b):
        if not 0 <= index < size:
            raise IndexError(f"point index {index} out of range for space of size {size}")

    if space.kind == "euclidean2d":
        (xa, ya), (xb, yb) = space.points[a], space.points[b]
        return math.hypot(xa - xb, ya - yb)
    return space.distances[a][b]


def build_instance(space: MetricSpace, pairs: Iterable[Tuple[int, int]]) -> Instance:
    """
    Attach links (sender, receiver point indices) to a space.

    Args:
        space: Metric space holding all endpoints
        pairs: (sender, receiver) point index pairs; link ids follow their order

    Returns:
        Validated Instance

    Raises:
        InstanceFormatError: invalid point index or zero-length link
    """
    links = []
    for link_id, (sender, receiver) in enumerate(pairs):
        for name, index in (("s", sender), ("r", receiver)):
            if not isinstance(index, (int, np.integer)) or not 0 <= index < space.size:
                raise InstanceFormatError(f"links[{link_id}].{name}", f"invalid point index {index}")
        length = distance(space, int(sender), int(receiver))
        if not length > 0:
            raise InstanceFormatError(f"links[{link_id}]", "zero-length link")
        links.append(Link(id=link_id, sender=int(sender), receiver=int(receiver), length=length))

    instance = Instance(space=space, links=tuple(links))
    logger.debug(f"Built instance with {instance.n} links, delta={instance.delta():.3f}")
    return instance
