"""Parser for the instance JSON format.

Format::

    {"space": {"kind": "euclidean2d", "points": [[x, y], ...]}
              | {"kind": "matrix", "d": [[...], ...]},
     "links": [{"s": i, "r": j}, ...]}
"""

from typing import Any, Dict

from src.core.metric import build_euclidean, build_instance, build_matrix
from src.models.errors import InstanceFormatError
from src.models.network import Instance


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    """Serialize an instance to the JSON structure."""
    space = instance.space
    if space.kind == "euclidean2d":
        space_dict = {"kind": "euclidean2d", "points": [list(p) for p in space.points]}
    else:
        space_dict = {"kind": "matrix", "d": [list(row) for row in space.distances]}
    return {
        "space": space_dict,
        "links": [{"s": link.sender, "r": link.receiver} for link in instance.links],
    }


def _require(container: Dict[str, Any], key: str, kind: type, field: str):
    if not isinstance(container, dict) or key not in container:
        raise InstanceFormatError(field, "missing")
    value = container[key]
    if not isinstance(value, kind):
        raise InstanceFormatError(field, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """
    Build and validate an instance from the JSON structure.

    Args:
        data: Parsed JSON document

    Returns:
        Instance

    Raises:
        InstanceFormatError: structural problems, naming the field
        MetricValidationError: metric axiom violations in a matrix space
    """
    space_data = _require(data, "space", dict, "space")
    kind = _require(space_data, "kind", str, "space.kind")

    if kind == "euclidean2d":
        points = _require(space_data, "points", list, "space.points")
        for i, point in enumerate(points):
            if not isinstance(point, list) or not all(isinstance(c, (int, float)) for c in point):
                raise InstanceFormatError(f"space.points[{i}]", "expected a list of numbers")
        space = build_euclidean(points)
    elif kind == "matrix":
        table = _require(space_data, "d", list, "space.d")
        for i, row in enumerate(table):
            if not isinstance(row, list) or not all(isinstance(c, (int, float)) for c in row):
                raise InstanceFormatError(f"space.d[{i}]", "expected a list of numbers")
        space = build_matrix(table)
    else:
        raise InstanceFormatError("space.kind", f"unknown kind '{kind}'")

    links = _require(data, "links", list, "links")
    pairs = []
    for i, link in enumerate(links):
        sender = _require(link, "s", int, f"links[{i}].s")
        receiver = _require(link, "r", int, f"links[{i}].r")
        pairs.append((sender, receiver))

    return build_instance(space, pairs)
