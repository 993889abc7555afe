"""Centralized comparison algorithms: HW greedy, its threshold search, and exact oracles."""

import itertools
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    HW_GRID_HIGH,
    HW_GRID_LOW,
    HW_GRID_POINTS,
    HW_REFINE_STEPS,
    LOAD_TOLERANCE,
    MAX_ORACLE_LINKS,
    MAX_POWER_ORACLE_LINKS,
    POWER_GRID_EXPONENTS,
)
from src.core.sinr import InterferenceModel, assign_power, interference_model, power_control_feasible
from src.models.errors import FormulaDomainError, OracleSizeError
from src.models.network import Instance
from src.models.results import ScheduleResult
from src.models.sinr import PowerAssignment, SINRParams
from src.utils.logger import get_logger

logger = get_logger(__name__)


def hw_constant(alpha: float, beta: float) -> float:
    """
    Admission threshold of the HW greedy,
    c = 1 / (2 + max(2, (2^6 * 3 * beta * (alpha - 1) / (alpha - 2))^(1/alpha)))^alpha.

    Raises:
        FormulaDomainError: alpha <= 2
    """
    if alpha <= 2:
        raise FormulaDomainError(f"hw_constant needs alpha > 2, got {alpha}")
    inner = (2 ** 6 * 3 * beta * (alpha - 1) / (alpha - 2)) ** (1.0 / alpha)
    return 1.0 / (2.0 + max(2.0, inner)) ** alpha


def _greedy_order(instance: Instance) -> List[int]:
    return sorted(range(instance.n), key=lambda v: (instance.lengths[v], v))


def _greedy_active(model: InterferenceModel, order: Sequence[int], c: float) -> List[int]:
    """Admit each link whose incoming affectance from the current set is at most c."""
    active: List[int] = []
    load = np.zeros(model.n)
    for v in order:
        if load[v] <= c + LOAD_TOLERANCE:
            active.append(v)
            load += model.affectance[v]
    return active


def hw_greedy(instance: Instance, power: PowerAssignment, params: SINRParams, c: float) -> ScheduleResult:
    """
    Length-ordered greedy admission with affectance threshold c.

    Links are scanned by non-decreasing length (ties by id). Feasibility of the
    result is checked and reported, not assumed.

    Args:
        instance: Problem instance
        power: Power assignment
        params: SINR parameters
        c: Admission threshold (> 0)

    Returns:
        ScheduleResult with the admitted links
    """
    if not c > 0:
        raise ValueError(f"threshold must be positive, got {c}")
    model = interference_model(instance, power, params)
    active = _greedy_active(model, _greedy_order(instance), c)
    feasible = model.feasible(model.mask(active))
    logger.debug(f"HW greedy c={c:.3g}: {len(active)} links, feasible={feasible}")
    return ScheduleResult(
        algorithm="hw",
        active=tuple(sorted(active)),
        power=power,
        feasible=feasible,
        threshold=c,
    )


def hw_binary_search(instance: Instance, power: PowerAssignment, params: SINRParams) -> ScheduleResult:
    """
    Search the HW threshold for the largest SINR-feasible greedy schedule.

    A logarithmic grid over [1e-6, 1] is evaluated first (plus the closed-form
    constant when alpha > 2), then the interval around the best grid point is
    narrowed by bisection in log space. Only feasible outcomes compete.

    Returns:
        Best feasible ScheduleResult found (algorithm "hw_bsearch")
    """
    model = interference_model(instance, power, params)
    order = _greedy_order(instance)
    cache = {}

    def evaluate(c: float) -> int:
        if c not in cache:
            active = _greedy_active(model, order, c)
            feasible = model.feasible(model.mask(active))
            cache[c] = (len(active) if feasible else -1, active)
        return cache[c][0]

    grid = list(np.geomspace(HW_GRID_LOW, HW_GRID_HIGH, HW_GRID_POINTS))
    candidates = list(grid)
    if params.alpha > 2:
        constant = hw_constant(params.alpha, params.beta)
        if HW_GRID_LOW <= constant <= HW_GRID_HIGH:
            candidates.append(constant)

    for c in candidates:
        evaluate(c)

    # Refine around the best grid point; ties prefer the larger threshold
    best_index = max(range(len(grid)), key=lambda i: (evaluate(grid[i]), i))
    low = math.log(grid[max(best_index - 1, 0)])
    high = math.log(grid[min(best_index + 1, len(grid) - 1)])
    for _ in range(HW_REFINE_STEPS):
        if high - low < 1e-12:
            break
        left = math.exp(low + (high - low) / 3)
        right = math.exp(high - (high - low) / 3)
        if evaluate(left) > evaluate(right):
            high = math.log(right)
        else:
            low = math.log(left)

    best_c = max(cache, key=lambda c: (cache[c][0], c))
    size, active = cache[best_c]
    if size < 0:
        # No threshold produced a feasible set; the empty schedule always is
        return ScheduleResult(algorithm="hw_bsearch", active=(), power=power, feasible=True, threshold=None)

    logger.debug(f"HW search: best c={best_c:.3g} with {size} links over {len(cache)} evaluations")
    return ScheduleResult(
        algorithm="hw_bsearch",
        active=tuple(sorted(active)),
        power=power,
        feasible=True,
        threshold=float(best_c),
    )


def _max_feasible_subset(model: InterferenceModel, links: Sequence[int], floor: int = 0) -> Optional[Tuple[int, ...]]:
    """
    Branch and bound over include/exclude decisions in id order.

    Feasibility is hereditary, so a branch is cut as soon as the partial set is
    infeasible; a branch is also cut when it cannot beat the incumbent. Include-first
    search returns the lexicographically smallest maximum set.

    Args:
        model: Interference tables
        links: Candidate link ids (sorted)
        floor: Only sets strictly larger than this are of interest

    Returns:
        Best set found, or None when no set beats ``floor``
    """
    links = list(links)
    total = len(links)
    best: List[Optional[Tuple[int, ...]]] = [None]
    best_size = [floor]
    chosen: List[int] = []
    beta, noise = model.params.beta, model.params.noise
    slack = 1.0 - 1e-12

    def fits(v: int, interference: np.ndarray) -> bool:
        # v against current interference, and every chosen link against v's addition
        if model.signal[v] < beta * (interference[v] + noise) * slack:
            return False
        for u in chosen:
            if model.signal[u] < beta * (interference[u] + model.gain[v, u] + noise) * slack:
                return False
        return True

    def search(position: int, interference: np.ndarray) -> None:
        if len(chosen) + (total - position) <= best_size[0]:
            return
        if position == total:
            best[0] = tuple(chosen)
            best_size[0] = len(chosen)
            return
        v = links[position]
        if fits(v, interference):
            chosen.append(v)
            search(position + 1, interference + model.gain[v])
            chosen.pop()
        search(position + 1, interference)

    search(0, np.zeros(model.n))
    return best[0]


def brute_force_opt(instance: Instance, power: PowerAssignment, params: SINRParams) -> ScheduleResult:
    """
    Maximum-cardinality feasible subset under a fixed power assignment.

    Raises:
        OracleSizeError: more than MAX_ORACLE_LINKS links
    """
    if instance.n > MAX_ORACLE_LINKS:
        raise OracleSizeError(instance.n, MAX_ORACLE_LINKS)
    model = interference_model(instance, power, params)
    best = _max_feasible_subset(model, range(instance.n), floor=-1) or ()
    logger.debug(f"Oracle ({power.scheme}): optimum {len(best)} of {instance.n}")
    return ScheduleResult(algorithm="brute", active=tuple(best), power=power, feasible=True)


def default_power_grid(params: SINRParams) -> Tuple[float, ...]:
    return tuple(params.p_max * 2.0 ** -k for k in POWER_GRID_EXPONENTS)


def _grid_assignment(
    subset: Sequence[int],
    grid: Sequence[float],
    params: SINRParams,
    instance: Instance
) -> Optional[Tuple[float, ...]]:
    """Depth-first search for grid powers making ``subset`` feasible; None if none exist."""
    cross = instance.cross_distances[np.ix_(subset, subset)]
    with np.errstate(divide="ignore"):
        attenuation = 1.0 / cross ** params.alpha  # attenuation[i, j] for sender i at receiver j
    k = len(subset)
    powers = [0.0] * k
    beta, noise = params.beta, params.noise
    slack = 1.0 - 1e-12

    def received(i: int, j: int) -> float:
        value = powers[i] * attenuation[i, j]
        return min(value, 1.0) if params.bounded else value

    def consistent(m: int) -> bool:
        # Links 0..m have powers; interference among them only grows as more are added
        for j in range(m + 1):
            interference = sum(received(i, j) for i in range(m + 1) if i != j)
            if received(j, j) < beta * (interference + noise) * slack:
                return False
        return True

    def assign(m: int) -> bool:
        if m == k:
            return True
        for p in grid:
            powers[m] = p
            if consistent(m) and assign(m + 1):
                return True
        powers[m] = 0.0
        return False

    return tuple(powers) if assign(0) else None


def brute_force_opt_power(
    instance: Instance,
    params: SINRParams,
    power_grid: Optional[Sequence[float]] = None
) -> ScheduleResult:
    """
    Largest set feasible under some per-link power drawn from a discrete grid.

    This is a lower bound on the optimum over continuous power assignments. Sizes are
    tried from n downward until one above the uniform-power optimum; subsets that no continuous power
    vector can make feasible are skipped before the grid search.

    Args:
        instance: Problem instance (at most MAX_POWER_ORACLE_LINKS links)
        params: SINR parameters
        power_grid: Allowed power levels (default p_max * 2^-k, k = 0..10)

    Returns:
        ScheduleResult with an explicit power assignment (unused links at p_max)
    """
    if instance.n > MAX_POWER_ORACLE_LINKS:
        raise OracleSizeError(instance.n, MAX_POWER_ORACLE_LINKS)

    grid = sorted(power_grid or default_power_grid(params), reverse=True)
    uniform = assign_power("uniform", instance, params)
    baseline = brute_force_opt(instance, uniform, params)
    best_set, best_powers = baseline.active, None

    for size in range(instance.n, len(baseline.active), -1):
        for subset in itertools.combinations(range(instance.n), size):
            if not params.bounded and not power_control_feasible(instance, subset, params):
                continue
            found = _grid_assignment(subset, grid, params, instance)
            if found is not None:
                best_set, best_powers = subset, found
                break
        if best_powers is not None:
            break

    if best_powers is None:
        return ScheduleResult(algorithm="brute_power", active=tuple(best_set), power=uniform, feasible=True)

    full = [params.p_max] * instance.n
    for link, p in zip(best_set, best_powers):
        full[link] = p
    power = assign_power("explicit", instance, params, powers=full)
    logger.debug(f"Power-grid oracle: {len(best_set)} links (uniform optimum {baseline.size})")
    return ScheduleResult(algorithm="brute_power", active=tuple(best_set), power=power, feasible=True)
