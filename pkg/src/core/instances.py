"""Instance generators (random topologies, the linear-power tightness construction) and file I/O."""

import math
from pathlib import Path

import numpy as np
from scipy.sparse.csgraph import shortest_path

from src.core.file_handler import FileHandler
from src.core.metric import build_euclidean, build_instance, build_matrix
from src.models.errors import ConfigError
from src.models.experiment import GenConfig
from src.models.network import Instance
from src.parsers.instance_parser import instance_from_dict, instance_to_dict
from src.utils.logger import get_logger

logger = get_logger(__name__)


def gen_random(config: GenConfig) -> Instance:
    """
    Random topology: senders uniform in the world square, each receiver at a uniform
    angle and a uniform distance in the open interval (0, d_max) from its sender
    (zero draws are redrawn; d_max itself is never drawn). Receivers are not clamped
    to the square.

    Args:
        config: Generator parameters (seeded)

    Returns:
        Euclidean Instance; point 2i is the sender and 2i+1 the receiver of link i
    """
    rng = np.random.default_rng(config.seed)
    senders = rng.uniform(0.0, config.world, size=(config.n, 2))
    angles = rng.uniform(0.0, 2 * math.pi, size=config.n)
    radii = rng.uniform(0.0, config.d_max, size=config.n)

    # Zero-length draws are redrawn
    while np.any(radii == 0):
        zero = radii == 0
        radii[zero] = rng.uniform(0.0, config.d_max, size=int(zero.sum()))

    receivers = senders + radii[:, None] * np.column_stack([np.cos(angles), np.sin(angles)])

    points = np.empty((2 * config.n, 2))
    points[0::2] = senders
    points[1::2] = receivers

    space = build_euclidean(points.tolist())
    instance = build_instance(space, [(2 * i, 2 * i + 1) for i in range(config.n)])
    logger.debug(f"Generated random instance n={config.n} d_max={config.d_max} seed={config.seed}")
    return instance


def tight_link_count(D: float, alpha: float) -> int:
    """floor((D/3)^alpha), the number of unit links in the tightness construction."""
    return int(math.floor((D / 3.0) ** alpha + 1e-9))


def gen_linear_tight(D: float, alpha: float) -> Instance:
    """
    Tightness construction: one long link w of length D and floor((D/3)^alpha) unit
    links whose senders sit at distance D/2 from s_w; every other distance is the
    shortest-path closure of these.

    Args:
        D: Length of the long link (>= 3)
        alpha: Path-loss exponent used to size the short-link set

    Returns:
        Matrix-kind Instance; link 0 is w, links 1.. are the unit links
    """
    if D < 3:
        raise ConfigError("D", f"must be >= 3, got {D}")
    count = tight_link_count(D, alpha)
    if count < 1:
        raise ConfigError("alpha", f"(D/3)^alpha rounds down to {count}")

    size = 2 + 2 * count
    base = np.zeros((size, size))  # zero entries are missing edges

    def connect(a: int, b: int, length: float) -> None:
        base[a, b] = base[b, a] = length

    connect(0, 1, D)
    for i in range(count):
        sender, receiver = 2 + 2 * i, 3 + 2 * i
        connect(sender, receiver, 1.0)
        connect(0, sender, D / 2.0)

    closure = shortest_path(base, method="FW", directed=False)
    space = build_matrix(closure.tolist())

    pairs = [(0, 1)] + [(2 + 2 * i, 3 + 2 * i) for i in range(count)]
    instance = build_instance(space, pairs)
    logger.info(f"Built tightness instance: D={D}, alpha={alpha}, {count} unit links")
    return instance


def save(instance: Instance, path: Path) -> None:
    """Write an instance as JSON."""
    FileHandler().write_json(Path(path), instance_to_dict(instance))


def load(path: Path) -> Instance:
    """
    Read and validate an instance JSON file.

    Raises:
        InstanceFormatError: malformed file (names the offending field)
        MetricValidationError: the distance table is not a metric
    """
    return instance_from_dict(FileHandler().read_json(Path(path)))
