"""Checkers for the structural affectance guarantees and post-run sanity conditions."""

import math
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

from config.settings import (
    FAILURE_FRACTION_THRESHOLD,
    FAILURE_FRACTION_TOLERANCE,
    LOAD_TOLERANCE,
    MAX_POWER_ORACLE_LINKS,
    MIN_VERIFY_HORIZON,
    SANDWICH_TOLERANCE,
)
from src.core.baselines import brute_force_opt, brute_force_opt_power
from src.core.game import run_game, summarize
from src.core.sinr import assign_power, interference_model
from src.models.errors import InfeasibleSetError, OracleSizeError
from src.models.game import GameStats, History
from src.models.network import Instance
from src.models.results import Report
from src.models.sinr import PowerAssignment, SINRParams
from src.utils.logger import get_logger

logger = get_logger(__name__)


def check_half_set(instance: Instance, links: Iterable[int], power: PowerAssignment, params: SINRParams) -> Report:
    """
    At least half the links of a feasible set cause total (outgoing) affectance at most 2.

    L' = {u : sum_{v in L} a_u(v) <= 2}; passes iff |L'| >= |L| / 2.

    Raises:
        InfeasibleSetError: the input set is not feasible
    """
    links = sorted(set(links))
    model = interference_model(instance, power, params)
    mask = model.mask(links)
    if not model.feasible(mask):
        raise InfeasibleSetError("half-set check needs a feasible set")

    if not links:
        return Report("half_set", True, measured={"key_metric": 1.0, "size": 0, "kept": 0})

    # outgoing[u] = sum over v in L of a_u(v)
    outgoing = model.affectance[np.ix_(links, links)].sum(axis=1)
    kept = [u for u, total in zip(links, outgoing) if total <= 2.0 + LOAD_TOLERANCE]
    dropped = [u for u in links if u not in set(kept)]
    ratio = len(kept) / len(links)
    passed = 2 * len(kept) >= len(links)

    return Report(
        check="half_set",
        passed=passed,
        witnesses=[] if passed else dropped,
        measured={"key_metric": ratio, "size": len(links), "kept": len(kept),
                  "max_outgoing": float(outgoing.max())},
    )


def check_separation(
    instance: Instance,
    links: Iterable[int],
    power: PowerAssignment,
    params: SINRParams,
    q: float
) -> Report:
    """
    Links of a q^alpha-signal set are mutually separated: d_uv * d_vu >= q^2 * l_u * l_v.

    The required product carries an extra factor min(1, c_u c_v)^(1/alpha), which is 1
    whenever beta >= 1 and is what the same argument yields for beta < 1.

    Returns:
        Report; a violated precondition fails the report naming the overloaded link
    """
    if params.bounded:
        raise ValueError("separation check applies to the unbounded model")

    links = sorted(set(links))
    model = interference_model(instance, power, params)
    strength = q ** params.alpha

    if links:
        mask = model.mask(links)
        loads = model.loads(mask)
        overloaded = [v for v in links if loads[v] > 1.0 / strength + LOAD_TOLERANCE]
        if overloaded:
            return Report(
                check="separation",
                passed=False,
                witnesses=overloaded,
                measured={"key_metric": float(loads[mask].max()), "limit": 1.0 / strength},
                notes="not a q^alpha-signal set",
            )

    cross = instance.cross_distances
    lengths = instance.lengths
    worst = math.inf
    violations = []
    for i, u in enumerate(links):
        for v in links[i + 1:]:
            product = cross[u, v] * cross[v, u]
            scale = min(1.0, model.c[u] * model.c[v]) ** (1.0 / params.alpha)
            required = q ** 2 * lengths[u] * lengths[v] * scale
            worst = min(worst, product / (q ** 2 * lengths[u] * lengths[v]))
            if product < required * (1.0 - 1e-9):
                violations.append((u, v))

    return Report(
        check="separation",
        passed=not violations,
        witnesses=violations,
        measured={"key_metric": worst if math.isfinite(worst) else None, "pairs": len(links) * (len(links) - 1) // 2},
    )


def check_sandwich(stats: GameStats, n: Optional[int] = None) -> Report:
    """
    X <= Q <= 2X + eps * n with eps the largest measured regret.

    Args:
        stats: Statistics of a completed run
        n: Number of links (defaults to the number in ``stats``)

    Returns:
        Report with Q, X and eps
    """
    n = stats.n if n is None else n
    eps = stats.epsilon
    lower_ok = stats.X <= stats.Q + SANDWICH_TOLERANCE
    upper = 2 * stats.X + eps * n
    upper_ok = stats.Q <= upper + SANDWICH_TOLERANCE

    witnesses = []
    if not lower_ok:
        witnesses.append({"inequality": "X <= Q", "X": stats.X, "Q": stats.Q})
    if not upper_ok:
        witnesses.append({"inequality": "Q <= 2X + eps n", "Q": stats.Q, "bound": upper})

    return Report(
        check="sandwich",
        passed=lower_ok and upper_ok,
        witnesses=witnesses,
        measured={"key_metric": stats.Q - 2 * stats.X, "Q": stats.Q, "X": stats.X, "epsilon": eps},
    )


def check_failure_fraction(history: History, stats: Optional[GameStats] = None) -> Report:
    """
    Links transmitting less than half the time (minus eps) would have failed at least
    a quarter of the time: every u with q_u < 1/2 - eps has f_u >= 1/4 - tolerance.

    Histories shorter than the minimum horizon are reported as inconclusive.
    """
    stats = stats or summarize(history)
    if history.rounds < MIN_VERIFY_HORIZON:
        logger.warning(f"Failure-fraction check skipped: {history.rounds} rounds < {MIN_VERIFY_HORIZON}")
        return Report(
            check="failure_fraction",
            passed=True,
            inconclusive=True,
            measured={"key_metric": None, "rounds": history.rounds},
            notes=f"insufficient horizon ({history.rounds} < {MIN_VERIFY_HORIZON} rounds)",
        )

    eps = stats.epsilon
    outside = np.flatnonzero(stats.q < 0.5 - eps)
    threshold = FAILURE_FRACTION_THRESHOLD - FAILURE_FRACTION_TOLERANCE
    violations = [
        {"link": int(u), "f": float(stats.f[u]), "margin": float(stats.f[u] - threshold)}
        for u in outside if stats.f[u] < threshold
    ]
    min_f = float(stats.f[outside].min()) if len(outside) else None

    return Report(
        check="failure_fraction",
        passed=not violations,
        witnesses=violations,
        measured={"key_metric": min_f, "epsilon": eps, "outside_count": int(len(outside))},
    )


def opt_ratio_report(
    instance: Instance,
    params: SINRParams,
    schemes: Sequence[str] = ("uniform", "linear", "mean"),
    rounds: int = 200,
    seed: int = 0
) -> Report:
    """
    Measured optimum ratios: grid-power optimum over uniform optimum against log2(Delta),
    and the game's Q per scheme against that scheme's optimum. Report only.

    Raises:
        OracleSizeError: instance too large for the power-grid oracle
    """
    if instance.n > MAX_POWER_ORACLE_LINKS:
        raise OracleSizeError(instance.n, MAX_POWER_ORACLE_LINKS)

    delta = instance.delta(bounded=params.bounded)
    log_delta = math.log2(delta) if delta > 1 else 0.0
    denominator = log_delta if log_delta > 0 else 1.0

    uniform_opt = brute_force_opt(instance, assign_power("uniform", instance, params), params).size
    power_opt = brute_force_opt_power(instance, params).size
    ratio = power_opt / uniform_opt if uniform_opt else math.inf

    measured: Dict[str, object] = {
        "key_metric": ratio,
        "opt_uniform": uniform_opt,
        "opt_power_grid": power_opt,
        "log2_delta": log_delta,
        "ratio_over_log_delta": ratio / denominator,
    }
    for scheme in schemes:
        power = assign_power(scheme, instance, params)
        optimum = brute_force_opt(instance, power, params).size
        stats = summarize(run_game(instance, scheme, "rwm", rounds, seed, params=params, power=power))
        measured[f"opt_{scheme}"] = optimum
        measured[f"Q_{scheme}"] = stats.Q
        measured[f"X_{scheme}"] = stats.X

    logger.info(f"OPT ratio report: OPT_P(grid)={power_opt}, OPT={uniform_opt}, log2(delta)={log_delta:.3f}")
    return Report(check="opt_ratio", passed=True, measured=measured)
