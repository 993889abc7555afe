"""SINR-model mathematics: power assignments, affectance, feasibility and signal strengthening."""

import math
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

import numpy as np

from config.settings import FEASIBILITY_RTOL, LOAD_TOLERANCE
from src.models.errors import InfeasibleLinkError, InfeasibleSetError, InstanceFormatError
from src.models.network import Instance
from src.models.sinr import Partition, PowerAssignment, SINRParams
from src.utils.logger import get_logger

logger = get_logger(__name__)


def masked_row_sum(actions: np.ndarray, table: np.ndarray) -> np.ndarray:
    """
    Sum the rows of ``table`` selected by each row of the boolean ``actions``.

    Unselected rows contribute nothing even where the table is infinite (a sender
    placed on another link's receiver), so the result is never NaN.
    """
    selected = np.asarray(actions, dtype=float)
    infinite = np.isinf(table)
    total = selected @ np.where(infinite, 0.0, table)
    total[(selected @ infinite) > 0] = np.inf
    return total


def assign_power(
    scheme: str,
    instance: Instance,
    params: SINRParams,
    powers: Optional[Sequence[float]] = None
) -> PowerAssignment:
    """
    Build a power assignment from a named scheme.

    Fixed schemes are normalized so the longest link transmits at p_max.

    Args:
        scheme: uniform, linear (P ~ l), mean (P ~ sqrt(l)), path_loss (P ~ l^alpha) or explicit
        instance: Problem instance
        params: SINR parameters
        powers: Per-link powers, explicit scheme only

    Returns:
        PowerAssignment
    """
    lengths = instance.lengths
    l_max = instance.l_max if instance.n else 1.0

    if scheme == "uniform":
        vector = np.full(instance.n, params.p_max)
    elif scheme == "linear":
        vector = params.p_max * lengths / l_max
    elif scheme == "mean":
        vector = params.p_max * np.sqrt(lengths / l_max)
    elif scheme == "path_loss":
        vector = params.p_max * (lengths / l_max) ** params.alpha
    elif scheme == "explicit":
        if powers is None or len(powers) != instance.n:
            raise InstanceFormatError("powers", f"explicit scheme needs {instance.n} powers")
        vector = np.asarray(powers, dtype=float)
        bad = np.flatnonzero(~((vector > 0) & (vector <= params.p_max)))
        if len(bad):
            i = int(bad[0])
            raise InstanceFormatError(f"powers[{i}]", f"{vector[i]} outside (0, {params.p_max}]")
    else:
        raise InstanceFormatError("scheme", f"unknown power scheme '{scheme}'")

    return PowerAssignment(scheme=scheme, powers=tuple(float(p) for p in vector))


class InterferenceModel:
    """
    Precomputed gain and affectance tables for one (instance, power, params) triple.

    gain[w, v] is the power of w received at r_v (zero on the diagonal), signal[v]
    the power of v at its own receiver. In the bounded model both are clipped at 1.
    Tables are read-only after construction.
    """

    def __init__(self, instance: Instance, power: PowerAssignment, params: SINRParams):
        if len(power) != instance.n:
            raise InstanceFormatError("powers", f"expected {instance.n} powers, got {len(power)}")

        self.instance = instance
        self.power = power
        self.params = params
        self.n = instance.n

        p = power.vector
        with np.errstate(divide="ignore"):
            received = p[:, None] / instance.cross_distances ** params.alpha
        if params.bounded:
            received = np.minimum(received, 1.0)

        self.signal = np.diag(received).copy()
        self.gain = received.copy()
        np.fill_diagonal(self.gain, 0.0)

        # c_v = beta / (1 - beta N / signal_v); links with a non-positive denominator can never succeed
        denominator = 1.0 - params.beta * params.noise / self.signal
        self.c = np.full(self.n, np.inf)
        ok = denominator > 0
        self.c[ok] = params.beta / denominator[ok]
        self.noise_feasible = ok

        with np.errstate(invalid="ignore", divide="ignore"):
            raw = self.c[None, :] * self.gain / self.signal[None, :]
        raw[self.gain == 0] = 0.0
        self.raw_affectance = raw
        self.affectance = np.minimum(raw, 1.0)

        for table in (self.signal, self.gain, self.c, self.raw_affectance, self.affectance):
            table.setflags(write=False)

    def mask(self, links: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(links)] = True
        return mask

    def c_factor(self, v: int) -> float:
        if not self.noise_feasible[v]:
            raise InfeasibleLinkError(v)
        c = float(self.c[v])
        if self.params.strict and c > 2 * self.params.beta:
            raise InfeasibleLinkError(v, f"c_v = {c:.6g} exceeds 2*beta under strict mode")
        return c

    def interference(self, active: np.ndarray) -> np.ndarray:
        """Interference at every receiver from the links in the boolean mask."""
        return masked_row_sum(active, self.gain)

    def successes(self, active: np.ndarray) -> np.ndarray:
        """
        For every link v, whether v would meet the threshold if it transmitted
        alongside the links in ``active`` (v's own entry in the mask is irrelevant).
        """
        interference = self.interference(active)
        threshold = self.params.beta * (interference + self.params.noise)
        return self.signal >= threshold * (1.0 - FEASIBILITY_RTOL)

    def loads(self, active: np.ndarray, clipped: bool = True) -> np.ndarray:
        """Affectance load sum_{u in active} a_u(v) for every v."""
        table = self.affectance if clipped else self.raw_affectance
        return masked_row_sum(active, table)

    def feasible(self, active: np.ndarray) -> bool:
        if not active.any():
            return True
        return bool(self.successes(active)[active].all())


@lru_cache(maxsize=32)
def interference_model(instance: Instance, power: PowerAssignment, params: SINRParams) -> InterferenceModel:
    """Cached InterferenceModel for the triple."""
    return InterferenceModel(instance, power, params)


def c_factor(instance: Instance, v: int, power: PowerAssignment, params: SINRParams) -> float:
    """
    Noise-correction factor c_v = beta / (1 - beta N l_v^alpha / P_v).

    Raises:
        InfeasibleLinkError: noise alone defeats v, or c_v > 2 beta in strict mode
    """
    return interference_model(instance, power, params).c_factor(v)


def affectance(instance: Instance, w: int, v: int, power: PowerAssignment, params: SINRParams) -> float:
    """
    Affectance of link w on link v, min{1, c_v (P_w / P_v)(l_v / d_wv)^alpha}.

    Args:
        instance: Problem instance
        w: Interfering link
        v: Affected link
        power: Power assignment
        params: SINR parameters

    Returns:
        Value in [0, 1]; zero when w == v
    """
    model = interference_model(instance, power, params)
    model.c_factor(v)
    return float(model.affectance[w, v])


def sinr_ratio(instance: Instance, v: int, links: Iterable[int], power: PowerAssignment, params: SINRParams) -> float:
    """SINR of v while the given set transmits; +inf when interference and noise are both zero."""
    links = set(links)
    if v not in links:
        raise ValueError(f"link {v} is not in the transmitting set")
    model = interference_model(instance, power, params)
    denominator = float(model.interference(model.mask(links))[v]) + params.noise
    if denominator == 0:
        return math.inf
    return float(model.signal[v]) / denominator


def is_feasible(instance: Instance, links: Iterable[int], power: PowerAssignment, params: SINRParams) -> bool:
    """True iff every link of the set meets the SINR threshold; SINR == beta counts as success."""
    model = interference_model(instance, power, params)
    return model.feasible(model.mask(links))


def affectance_load(instance: Instance, v: int, links: Iterable[int], power: PowerAssignment, params: SINRParams) -> float:
    """Total affectance sum_{u in links} a_u(v) on v."""
    model = interference_model(instance, power, params)
    return float(model.loads(model.mask(links))[v])


def max_load(model: InterferenceModel, links: Sequence[int], clipped: bool = True) -> float:
    """Largest affectance load within the set."""
    if not len(links):
        return 0.0
    mask = model.mask(links)
    return float(model.loads(mask, clipped=clipped)[mask].max())


def is_signal_set(instance: Instance, links: Iterable[int], delta: float, power: PowerAssignment, params: SINRParams) -> bool:
    """True iff the set is a delta-signal set (maximum load at most 1/delta)."""
    model = interference_model(instance, power, params)
    return max_load(model, list(links)) <= 1.0 / delta + LOAD_TOLERANCE


def strengthen(instance: Instance, links: Iterable[int], t: float, power: PowerAssignment, params: SINRParams) -> Partition:
    """
    Split a feasible set into t-signal groups by first-fit.

    Links are taken in non-increasing length order (ties by id) and placed into the
    first group in which every member, the newcomer included, keeps load at most 1/t.

    Args:
        instance: Problem instance
        links: A feasible (1-signal) set
        t: Target signal strength
        power: Power assignment
        params: SINR parameters

    Returns:
        Partition whose groups are verified t-signal sets

    Raises:
        InfeasibleSetError: the input set is not feasible
    """
    links = sorted(set(links))
    model = interference_model(instance, power, params)
    mask = model.mask(links)
    if not model.feasible(mask):
        raise InfeasibleSetError("signal strengthening needs a feasible set")

    limit = 1.0 / t + LOAD_TOLERANCE
    order = sorted(links, key=lambda v: (-instance.lengths[v], v))
    groups: List[List[int]] = []
    group_loads: List[np.ndarray] = []

    for v in order:
        placed = False
        for members, loads in zip(groups, group_loads):
            if loads[v] > limit:
                continue
            if any(loads[u] + model.affectance[v, u] > limit for u in members):
                continue
            members.append(v)
            loads += model.affectance[v]
            placed = True
            break
        if not placed:
            groups.append([v])
            group_loads.append(model.affectance[v].copy())

    target = math.ceil(2 * t / params.beta)
    partition = Partition(
        groups=[frozenset(g) for g in groups],
        target_count=target,
        strength=t,
        exceeds_target=len(groups) > target,
        max_loads=[max_load(model, sorted(g)) for g in groups],
    )
    if partition.exceeds_target:
        logger.warning(f"Strengthening produced {partition.count} groups, above the bound {target}")
    logger.debug(f"Strengthened {len(links)} links into {partition.count} groups (t={t:.3g})")
    return partition


def power_control_feasible(instance: Instance, links: Iterable[int], params: SINRParams) -> bool:
    """
    Whether some positive power vector within p_max makes the set feasible (unbounded model).

    With F[v, w] = beta l_v^alpha / d_wv^alpha, a power vector exists iff the spectral
    radius of F is below 1 (at most 1 without noise) and, with noise, the minimal
    solution of (I - F) P = beta N l^alpha stays within p_max.
    """
    if params.bounded:
        raise ValueError("power control feasibility is defined for the unbounded model only")
    links = sorted(set(links))
    if len(links) <= 1:
        if not links:
            return True
        v = links[0]
        return params.beta * params.noise * instance.lengths[v] ** params.alpha <= params.p_max * (1 + FEASIBILITY_RTOL)

    idx = np.array(links)
    lengths = instance.lengths[idx]
    cross = instance.cross_distances[np.ix_(idx, idx)]  # cross[w, v] = d(s_w, r_v)
    with np.errstate(divide="ignore"):
        f = params.beta * (lengths[:, None] / cross.T) ** params.alpha
    np.fill_diagonal(f, 0.0)
    if not np.all(np.isfinite(f)):
        return False

    radius = float(np.max(np.abs(np.linalg.eigvals(f))))
    if params.noise == 0:
        return radius <= 1.0 + 1e-9
    if radius >= 1.0:
        return False
    demand = params.beta * params.noise * lengths ** params.alpha
    minimal = np.linalg.solve(np.eye(len(idx)) - f, demand)
    return bool(np.all(minimal <= params.p_max * (1 + 1e-9)))
