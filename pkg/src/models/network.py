"""Data models for metric spaces, links and problem instances."""

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform


@dataclass(frozen=True)
class MetricSpace:
    """A finite metric space, either planar points or an explicit distance table."""
    kind: str  # "euclidean2d" or "matrix"
    points: Tuple[Tuple[float, float], ...] = ()
    distances: Tuple[Tuple[float, ...], ...] = ()

    @property
    def size(self) -> int:
        """Number of points in the space."""
        if self.kind == "euclidean2d":
            return len(self.points)
        return len(self.distances)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Full pairwise distance table (read-only)."""
        if self.kind == "euclidean2d":
            coords = np.asarray(self.points, dtype=float).reshape(-1, 2)
            if len(coords) == 1:
                table = np.zeros((1, 1))
            else:
                table = squareform(pdist(coords, metric="euclidean"))
        else:
            table = np.array(self.distances, dtype=float)
        table.setflags(write=False)
        return table


@dataclass(frozen=True)
class Link:
    """A sender/receiver pair; ``length`` is d(sender, receiver)."""
    id: int
    sender: int
    receiver: int
    length: float


@dataclass(frozen=True)
class Instance:
    """A metric space plus a set of links."""
    space: MetricSpace
    links: Tuple[Link, ...]

    @property
    def n(self) -> int:
        return len(self.links)

    @cached_property
    def lengths(self) -> np.ndarray:
        lengths = np.array([link.length for link in self.links], dtype=float)
        lengths.setflags(write=False)
        return lengths

    @cached_property
    def cross_distances(self) -> np.ndarray:
        """Table D with D[w, v] = d(s_w, r_v); the diagonal holds the link lengths."""
        senders = [link.sender for link in self.links]
        receivers = [link.receiver for link in self.links]
        table = self.space.matrix[np.ix_(senders, receivers)].copy()
        table.setflags(write=False)
        return table

    @property
    def l_max(self) -> float:
        return float(self.lengths.max()) if self.n else 0.0

    @property
    def l_min(self) -> float:
        return float(self.lengths.min()) if self.n else 0.0

    def delta(self, bounded: bool = False) -> float:
        """
        Ratio of longest to shortest link length.

        Args:
            bounded: Use l_max / max(1, l_min), the bounded-model variant

        Returns:
            Delta (1.0 for an empty instance)
        """
        if not self.n:
            return 1.0
        floor = max(1.0, self.l_min) if bounded else self.l_min
        return max(1.0, self.l_max / floor)

    def subset(self, link_ids) -> "Instance":
        """Instance restricted to the given link ids (ids are renumbered from 0)."""
        chosen = [self.links[i] for i in sorted(link_ids)]
        relabeled = tuple(
            Link(id=k, sender=link.sender, receiver=link.receiver, length=link.length)
            for k, link in enumerate(chosen)
        )
        return Instance(space=self.space, links=relabeled)
