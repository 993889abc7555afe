"""The repeated transmission game: two-action learners, the round loop and regret accounting."""

import math
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.settings import (
    CONVERGENCE_TOLERANCE,
    CONVERGENCE_WINDOW,
    EXP3_DEFAULT_GAMMA,
    FEASIBILITY_RTOL,
    LEARNER_KINDS,
    RWM_MULTIPLIER,
)
from src.core.sinr import InterferenceModel, assign_power, interference_model, masked_row_sum
from src.models.errors import ConfigError
from src.models.game import SILENT, TRANSMIT, GameStats, History, LearnerState, RoundRecord
from src.models.network import Instance
from src.models.sinr import PowerAssignment, SINRParams
from src.utils.logger import get_logger

logger = get_logger(__name__)

_TINY = np.finfo(float).tiny


def exp3_gamma(horizon: int, actions: int = 2) -> float:
    """Exploration rate min(1, sqrt(K ln K / ((e - 1) T))) for a known horizon."""
    return min(1.0, math.sqrt(actions * math.log(actions) / ((math.e - 1) * horizon)))


def new_learner(
    kind: str,
    rng_seed=None,
    gamma: Optional[float] = None,
    horizon: Optional[int] = None,
    initial_weights: Optional[Tuple[float, float]] = None
) -> LearnerState:
    """
    Create a learner for one link.

    Args:
        kind: "rwm" or "exp3"
        rng_seed: Seed (int or numpy SeedSequence) of the learner's private stream
        gamma: EXP3 exploration rate; derived from ``horizon`` or defaulted when omitted
        horizon: Known number of rounds, EXP3 only
        initial_weights: (transmit, silent) weights; both 1 by default

    Returns:
        LearnerState
    """
    if kind not in LEARNER_KINDS:
        raise ConfigError("learner", f"unknown learner kind '{kind}'")

    w_transmit, w_silent = initial_weights if initial_weights else (1.0, 1.0)
    if not (w_transmit > 0 and w_silent > 0):
        raise ConfigError("initial_weights", "weights must be positive")

    if kind == "exp3":
        if gamma is None:
            gamma = exp3_gamma(horizon) if horizon else EXP3_DEFAULT_GAMMA
        if not 0 < gamma <= 1:
            raise ConfigError("gamma", f"must lie in (0, 1], got {gamma}")
    else:
        gamma = 0.0

    return LearnerState(
        kind=kind,
        weight_transmit=float(w_transmit),
        weight_silent=float(w_silent),
        gamma=float(gamma),
        rng=np.random.default_rng(rng_seed),
    )


def transmit_probability(state: LearnerState) -> float:
    """Probability that the learner transmits this round."""
    share = state.weight_transmit / (state.weight_transmit + state.weight_silent)
    if state.kind == "exp3":
        return (1.0 - state.gamma) * share + state.gamma / 2.0
    return share


def update_learner(state: LearnerState, action: int, success: bool) -> LearnerState:
    """
    Apply one round of bandit feedback.

    RWM only learns from transmissions: success halves the silent weight, failure
    halves the transmit weight. EXP3 applies the importance-weighted exponential
    update with utility mapped to [0, 1] via (u + 1) / 2.

    Args:
        state: Current learner state
        action: TRANSMIT or SILENT
        success: Outcome of the transmission (ignored when silent)

    Returns:
        Updated LearnerState
    """
    if action not in (TRANSMIT, SILENT):
        raise ValueError(f"invalid action {action}")

    if state.kind == "rwm":
        if action == SILENT:
            return state
        if success:
            return replace(state, weight_silent=max(state.weight_silent * RWM_MULTIPLIER, _TINY))
        return replace(state, weight_transmit=max(state.weight_transmit * RWM_MULTIPLIER, _TINY))

    utility = (1 if success else -1) if action == TRANSMIT else 0
    reward = (utility + 1) / 2.0
    p_transmit = transmit_probability(state)
    p_action = p_transmit if action == TRANSMIT else 1.0 - p_transmit
    boost = math.exp(state.gamma * (reward / p_action) / 2.0)

    w_transmit, w_silent = state.weight_transmit, state.weight_silent
    if action == TRANSMIT:
        w_transmit *= boost
    else:
        w_silent *= boost
    scale = max(w_transmit, w_silent)
    return replace(
        state,
        weight_transmit=max(w_transmit / scale, _TINY),
        weight_silent=max(w_silent / scale, _TINY),
    )


def play_round(
    model: InterferenceModel,
    learners: Sequence[LearnerState],
    round_index: int
) -> Tuple[RoundRecord, List[LearnerState]]:
    """
    Play one synchronous round.

    Every link samples its action from its own stream, the transmitting set is formed,
    and each transmitter succeeds iff its SINR meets beta against the others. Each
    learner then sees only its own outcome.

    Args:
        model: Interference tables for (instance, power, params)
        learners: One learner per link
        round_index: 1-based round number

    Returns:
        (RoundRecord, updated learners)
    """
    if len(learners) != model.n:
        raise ValueError(f"expected {model.n} learners, got {len(learners)}")

    active = np.array(
        [state.rng.random() < transmit_probability(state) for state in learners],
        dtype=bool,
    )
    success = model.successes(active) & active

    actions = tuple(int(a) for a in active)
    successes = tuple(int(s) for s in success)
    utilities = tuple((1 if s else -1) if a else 0 for a, s in zip(actions, successes))

    updated = [
        update_learner(state, a, bool(s))
        for state, a, s in zip(learners, actions, successes)
    ]
    record = RoundRecord(round=round_index, actions=actions, successes=successes, utilities=utilities)
    return record, updated


def spawn_learners(
    n: int,
    kind: str,
    seed: int,
    horizon: Optional[int] = None,
    gamma: Optional[float] = None,
    initial_weights: Optional[Sequence[Tuple[float, float]]] = None
) -> List[LearnerState]:
    """One learner per link, each on an independent stream split from the root seed."""
    streams = np.random.SeedSequence(seed).spawn(n)
    return [
        new_learner(
            kind,
            rng_seed=streams[i],
            gamma=gamma,
            horizon=horizon,
            initial_weights=initial_weights[i] if initial_weights else None,
        )
        for i in range(n)
    ]


def run_game(
    instance: Instance,
    scheme: str,
    learner_kind: str,
    rounds: int,
    seed: int,
    params: Optional[SINRParams] = None,
    power: Optional[PowerAssignment] = None,
    gamma: Optional[float] = None,
    initial_weights: Optional[Sequence[Tuple[float, float]]] = None
) -> History:
    """
    Run the game for a fixed number of rounds.

    Args:
        instance: Problem instance
        scheme: Power scheme used when a link transmits
        learner_kind: "rwm" or "exp3"
        rounds: Number of rounds T (>= 1)
        seed: Root seed; identical inputs give identical histories
        params: SINR parameters (defaults from settings)
        power: Precomputed power assignment (overrides ``scheme``)
        gamma: EXP3 exploration rate (derived from ``rounds`` when omitted)
        initial_weights: Optional per-link (transmit, silent) starting weights

    Returns:
        History of all rounds
    """
    if rounds < 1:
        raise ConfigError("rounds", f"must be >= 1, got {rounds}")

    params = params or SINRParams()
    power = power or assign_power(scheme, instance, params)
    model = interference_model(instance, power, params)

    learners = spawn_learners(
        instance.n, learner_kind, seed,
        horizon=rounds, gamma=gamma, initial_weights=initial_weights,
    )
    history = History(instance=instance, params=params, power=power, learner_kind=learner_kind, seed=seed)

    for t in range(1, rounds + 1):
        record, learners = play_round(model, learners, t)
        history.records.append(record)

    logger.debug(
        f"Game {learner_kind}/{power.scheme} seed={seed}: {rounds} rounds, "
        f"final successes={history.records[-1].success_count}"
    )
    return history


def counterfactual_successes(history: History) -> np.ndarray:
    """
    T x n matrix: would link u have succeeded at round t had it transmitted,
    against the others' recorded actions. Clipped affectance counts as failure.
    """
    model = interference_model(history.instance, history.power, history.params)
    interference = masked_row_sum(history.actions_matrix(), model.gain)
    threshold = history.params.beta * (interference + history.params.noise)
    return model.signal[None, :] >= threshold * (1.0 - FEASIBILITY_RTOL)


def _regrets(history: History, would_succeed: np.ndarray) -> np.ndarray:
    achieved = history.utilities_matrix().mean(axis=0)
    always_transmit = (2.0 * would_succeed - 1.0).mean(axis=0)
    always_silent = np.zeros_like(achieved)
    return np.maximum(always_transmit, always_silent) - achieved


def summarize(history: History) -> GameStats:
    """
    Per-link statistics of a completed run.

    Returns:
        GameStats with q, x, counterfactual failure fraction f and measured regret
    """
    if not history.records:
        raise ValueError("cannot summarize an empty history")

    would_succeed = counterfactual_successes(history)
    return GameStats(
        q=history.actions_matrix().mean(axis=0),
        x=history.successes_matrix().mean(axis=0),
        f=1.0 - would_succeed.mean(axis=0),
        regret=_regrets(history, would_succeed),
        rounds=history.rounds,
    )


def regret(history: History, player: int) -> float:
    """
    Measured external regret of one link: best constant action's average utility
    minus the achieved average utility.
    """
    if not history.records:
        raise ValueError("cannot measure regret on an empty history")
    if not 0 <= player < history.instance.n:
        raise IndexError(f"player {player} out of range")
    return float(_regrets(history, counterfactual_successes(history))[player])


def detect_convergence(
    successes: Sequence[float],
    window: int = CONVERGENCE_WINDOW,
    tolerance: float = CONVERGENCE_TOLERANCE
) -> Optional[int]:
    """
    First round at which the mean success count of the latest window differs from
    the preceding window by less than ``tolerance`` (relative).

    Args:
        successes: Success count per round
        window: Window length
        tolerance: Relative change threshold

    Returns:
        1-based round index at which convergence is detected, or None
    """
    values = np.asarray(successes, dtype=float)
    for end in range(2 * window, len(values) + 1):
        previous = values[end - 2 * window:end - window].mean()
        current = values[end - window:end].mean()
        scale = max(previous, current)
        if scale == 0:
            continue
        if abs(current - previous) / scale < tolerance:
            return end
    return None
