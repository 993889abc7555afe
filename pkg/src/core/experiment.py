"""Experiment runner reproducing the simulation protocol and emitting CSV files."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from config.settings import ALGORITHMS, FINAL_WINDOW, FIXED_POWER_SCHEMES, MAX_ORACLE_LINKS
from src.core.baselines import brute_force_opt, hw_binary_search, hw_constant, hw_greedy
from src.core.file_handler import FileHandler
from src.core.game import detect_convergence, run_game, summarize
from src.core.instances import gen_linear_tight, gen_random, load
from src.core.sinr import assign_power, is_feasible, strengthen
from src.core.verify import (
    check_failure_fraction,
    check_half_set,
    check_sandwich,
    check_separation,
    opt_ratio_report,
)
from src.models.errors import ConfigError, FormulaDomainError
from src.models.experiment import ExperimentConfig, GenConfig
from src.models.network import Instance
from src.models.sinr import SINRParams
from src.utils.logger import get_logger, log_summary

logger = get_logger(__name__)

GAME_LEARNERS = {"game_rwm": "rwm", "game_exp3": "exp3"}


@dataclass
class ExperimentOutputs:
    """Files and per-run records produced by one experiment."""
    kind: str
    output_dir: Path
    provenance: Dict[str, Any]
    files: List[Path] = field(default_factory=list)
    records: List[Dict[str, Any]] = field(default_factory=list)
    failed_checks: int = 0


def derive_seed(root: int, *labels: int) -> int:
    """Deterministic child seed for a (root, labels...) path."""
    return int(np.random.SeedSequence([root, *labels]).generate_state(1)[0])


def _scheme_label(scheme: str) -> int:
    return FIXED_POWER_SCHEMES.index(scheme)


def _algorithm_label(algorithm: str) -> int:
    return ALGORITHMS.index(algorithm)


def _final_mean(values: np.ndarray) -> float:
    window = min(FINAL_WINDOW, len(values))
    return float(np.mean(values[-window:]))


def evaluate_algorithm(
    instance: Instance,
    scheme: str,
    algorithm: str,
    params: SINRParams,
    rounds: int,
    seed: int
) -> Optional[Dict[str, Any]]:
    """
    Run one algorithm on one instance under one power scheme.

    Game algorithms report the mean success count over the final rounds; the
    centralized ones report the size of their (feasible) schedule.

    Returns:
        Record dictionary, or None when the algorithm does not apply
    """
    power = assign_power(scheme, instance, params)

    if algorithm in GAME_LEARNERS:
        history = run_game(instance, scheme, GAME_LEARNERS[algorithm], rounds, seed, params=params, power=power)
        stats = summarize(history)
        return {
            "value": _final_mean(history.successes_per_round()),
            "Q": stats.Q,
            "X": stats.X,
            "epsilon": stats.epsilon,
            "c": None,
            "feasible": None,
        }

    if algorithm == "hw":
        try:
            c = hw_constant(params.alpha, params.beta)
        except FormulaDomainError as e:
            logger.warning(f"Skipping hw: {e}")
            return None
        result = hw_greedy(instance, power, params, c)
    elif algorithm == "hw_bsearch":
        result = hw_binary_search(instance, power, params)
    elif algorithm == "brute":
        result = brute_force_opt(instance, power, params)
    else:
        raise ConfigError("algorithms", f"unknown algorithm '{algorithm}'")

    return {"value": float(result.size), "Q": None, "X": None, "epsilon": None, **result.to_row()}


def _sweep_point(task: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Evaluate every (scheme, algorithm) pair on one generated instance."""
    instance = gen_random(task["gen"])
    rows = []
    for scheme in task["schemes"]:
        for algorithm in task["algorithms"]:
            seed = derive_seed(task["seed"], _scheme_label(scheme), _algorithm_label(algorithm))
            record = evaluate_algorithm(instance, scheme, algorithm, task["params"], task["rounds"], seed)
            if record is None:
                continue
            record.update({
                "algorithm": algorithm,
                "scheme": scheme,
                "replicate": task["replicate"],
                "n": instance.n,
                "d_max": task["gen"].d_max,
            })
            rows.append(record)
    return rows


def _game_replicate(task: Dict[str, Any]) -> Dict[str, Any]:
    """One convergence replicate: full per-round and per-link tables."""
    history = run_game(
        task["instance"], task["scheme"], task["learner"], task["rounds"], task["seed"], params=task["params"]
    )
    stats = summarize(history)
    return {"rounds": history.to_frame(), "links": stats.to_frame(), "stats": stats}


def _parallel_map(func: Callable, tasks: Sequence[Any], workers: int, label: str) -> List[Any]:
    """Order-preserving map, sequential or over a process pool."""
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tqdm(tasks, desc=label, leave=False, disable=None)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(tqdm(pool.map(func, tasks), total=len(tasks), desc=label, leave=False, disable=None))


def _load_instance(config: ExperimentConfig) -> Instance:
    if config.instance_path:
        logger.info(f"Loading instance from: {config.instance_path}")
        return load(config.instance_path)
    return gen_random(config.gen)


class ExperimentRunner:
    """Runs one experiment configuration and writes its CSV files."""

    def __init__(self, config: ExperimentConfig):
        config.validate()
        self._check_oracle_sizes(config)
        self._check_applicable(config)
        self.config = config
        self.output_dir = Path(config.output_dir)
        self.file_handler = FileHandler()
        self.provenance = {"config": config.to_dict(), "seed": config.seed}
        self.outputs = ExperimentOutputs(kind=config.kind, output_dir=self.output_dir, provenance=self.provenance)

    @staticmethod
    def _check_applicable(config: ExperimentConfig) -> None:
        # hw is skipped for alpha <= 2; a run with nothing else would produce no rows
        if config.kind not in ("convergence", "sweep_n", "sweep_dmax"):
            return
        if set(config.algorithms) == {"hw"} and config.params.alpha <= 2:
            raise ConfigError("algorithms", f"hw needs alpha > 2, got {config.params.alpha}; add another algorithm")

    @staticmethod
    def _check_oracle_sizes(config: ExperimentConfig) -> None:
        if "brute" not in config.algorithms or config.instance_path:
            return
        if config.kind == "sweep_n":
            sizes = config.n_values
        elif config.kind in ("convergence", "sweep_dmax"):
            sizes = (config.gen.n,)
        else:
            return
        if max(sizes) > MAX_ORACLE_LINKS:
            raise ConfigError("algorithms", f"brute needs n <= {MAX_ORACLE_LINKS}, got {max(sizes)}")

    def write(self, name: str, frame: pd.DataFrame) -> Path:
        path = self.file_handler.write_csv(self.output_dir / name, frame, self.provenance)
        self.outputs.files.append(path)
        return path

    def run(self) -> ExperimentOutputs:
        logger.info(f"Starting experiment '{self.config.kind}' (seed={self.config.seed})")
        handler = getattr(self, f"_run_{self.config.kind}")
        handler()
        logger.info(f"Experiment complete: {len(self.outputs.files)} files in {self.output_dir}")
        return self.outputs

    def _run_convergence(self) -> None:
        config = self.config
        instance = _load_instance(config)
        games = [a for a in config.algorithms if a in GAME_LEARNERS]

        for scheme in config.schemes:
            for algorithm in games:
                tasks = [
                    {
                        "instance": instance,
                        "scheme": scheme,
                        "learner": GAME_LEARNERS[algorithm],
                        "rounds": config.rounds,
                        "params": config.params,
                        "seed": derive_seed(config.seed, _scheme_label(scheme), _algorithm_label(algorithm), r),
                    }
                    for r in range(config.replicates)
                ]
                results = _parallel_map(_game_replicate, tasks, config.workers, f"{algorithm}/{scheme}")

                for r, result in enumerate(results):
                    stem = f"runs/convergence_{algorithm}_{scheme}_r{r:03d}"
                    self.write(f"{stem}.csv", result["rounds"])
                    self.write(f"{stem}_links.csv", result["links"])
                    self.outputs.records.append({
                        "algorithm": algorithm,
                        "scheme": scheme,
                        "replicate": r,
                        "value": _final_mean(result["rounds"]["successes"].to_numpy()),
                        "Q": result["stats"].Q,
                        "X": result["stats"].X,
                        "epsilon": result["stats"].epsilon,
                        "sandwich": check_sandwich(result["stats"], instance.n).passed,
                    })

                stacked = pd.concat([res["rounds"] for res in results])
                curve = stacked.groupby("round", sort=True).agg(
                    attempts=("attempts", "mean"),
                    successes=("successes", "mean"),
                    successes_std=("successes", lambda s: float(np.std(s))),
                ).reset_index()
                converged = detect_convergence(curve["successes"].to_numpy())
                logger.info(f"{algorithm}/{scheme}: converged at round {converged}")
                self.write(f"convergence_{algorithm}_{scheme}.csv", curve)

        # Centralized algorithms once per scheme, as reference levels
        for scheme in config.schemes:
            for algorithm in config.algorithms:
                if algorithm in GAME_LEARNERS:
                    continue
                record = evaluate_algorithm(instance, scheme, algorithm, config.params, config.rounds, config.seed)
                if record is not None:
                    record.update({"algorithm": algorithm, "scheme": scheme, "replicate": 0})
                    self.outputs.records.append(record)

    def _sweep(self, name: str, points: Sequence[GenConfig]) -> None:
        config = self.config
        tasks = []
        for p, gen in enumerate(points):
            for r in range(config.replicates):
                seed = derive_seed(config.seed, p, r)
                tasks.append({
                    "gen": replace(gen, seed=seed),
                    "schemes": config.schemes,
                    "algorithms": config.algorithms,
                    "params": config.params,
                    "rounds": config.rounds,
                    "seed": seed,
                    "replicate": r,
                })

        rows = [row for rows in _parallel_map(_sweep_point, tasks, config.workers, name) for row in rows]
        self.outputs.records.extend(rows)
        axis = "n" if name == "sweep_n" else "d_max"
        frame = pd.DataFrame(rows)
        self.write(f"{name}.csv", frame)

        means = frame.groupby([axis, "algorithm", "scheme"], sort=True)["value"].agg(
            mean="mean", std=lambda s: float(np.std(s)), count="count"
        ).reset_index()
        self.write(f"{name}_means.csv", means)

    def _run_sweep_n(self) -> None:
        gen = self.config.gen
        self._sweep("sweep_n", [replace(gen, n=int(n)) for n in self.config.n_values])

    def _run_sweep_dmax(self) -> None:
        gen = self.config.gen
        self._sweep("sweep_dmax", [replace(gen, d_max=float(d)) for d in self.config.d_max_values])

    def _run_tight(self) -> None:
        config = self.config
        params = config.params
        instance = gen_linear_tight(config.tight_d, params.alpha)
        n = instance.n
        # w always transmits, every short link stays silent
        dominant = [(1.0, 1e-300)] + [(1e-300, 1.0)] * (n - 1)

        rows = []
        for scheme in config.schemes:
            power = assign_power(scheme, instance, params)
            opt = brute_force_opt(instance, power, params).size if n <= MAX_ORACLE_LINKS else None
            short_links = list(range(1, n))
            seed = derive_seed(config.seed, _scheme_label(scheme))

            free = summarize(run_game(instance, scheme, "rwm", config.rounds, seed, params=params, power=power))
            pinned = summarize(run_game(
                instance, scheme, "rwm", config.rounds, seed, params=params, power=power, initial_weights=dominant
            ))
            row = {
                "scheme": scheme,
                "links": n,
                "delta": instance.delta(),
                "opt": opt,
                "short_set_feasible": is_feasible(instance, short_links, power, params),
                "Q": free.Q,
                "X": free.X,
                "Q_dominant_start": pinned.Q,
                "max_regret_dominant_start": float(pinned.regret.max()),
            }
            rows.append(row)
            self.outputs.records.append({"algorithm": "game_rwm", "scheme": scheme, "replicate": 0, "value": free.X})
            logger.info(f"Tight instance ({scheme}): OPT={opt}, Q={free.Q:.3f}, dominant-start Q={pinned.Q:.3f}")

        self.write("tight.csv", pd.DataFrame(rows))

    def _run_verify_suite(self) -> None:
        config = self.config
        params = config.params
        log_rows = []
        failed = 0

        for r in tqdm(range(config.replicates), desc="verify", leave=False, disable=None):
            seed = derive_seed(config.seed, r)
            instance = gen_random(replace(config.gen, seed=seed))
            instance_id = f"r{r:03d}"
            reports = []

            for scheme in config.schemes:
                power = assign_power(scheme, instance, params)
                feasible_sets = [hw_binary_search(instance, power, params).active]
                if instance.n <= MAX_ORACLE_LINKS:
                    feasible_sets.append(brute_force_opt(instance, power, params).active)

                for links in feasible_sets:
                    reports.append(check_half_set(instance, links, power, params))
                    if not params.bounded:
                        partition = strengthen(instance, links, 3 ** params.alpha, power, params)
                        for group in partition.groups:
                            reports.append(check_separation(instance, group, power, params, 3.0))

                history = run_game(instance, scheme, "rwm", config.rounds, derive_seed(seed, _scheme_label(scheme)),
                                   params=params, power=power)
                stats = summarize(history)
                reports.append(check_sandwich(stats, instance.n))
                reports.append(check_failure_fraction(history, stats))

            if instance.n <= 8:
                reports.append(opt_ratio_report(instance, params, schemes=config.schemes, seed=seed))

            for report in reports:
                log_rows.append(report.to_row(instance_id))
                if not report.passed:
                    failed += 1
                    logger.error(f"Check {report.check} failed on {instance_id}: {report.witnesses[:5]}")

        self.outputs.failed_checks = failed
        frame = pd.DataFrame(log_rows, columns=["check", "instance_id", "pass", "key_metric"])
        self.write("verify_log.csv", frame)
        for check, group in frame.groupby("check", sort=True):
            self.outputs.records.append({
                "algorithm": check,
                "scheme": "all",
                "replicate": 0,
                "value": float(group["pass"].mean()),
            })


def run_experiment(config: ExperimentConfig) -> ExperimentOutputs:
    """
    Run an experiment; every output is a pure function of (config, seed).

    Raises:
        ConfigError: invalid configuration (names the field)
    """
    return ExperimentRunner(config).run()


def emit_summary(outputs: ExperimentOutputs) -> pd.DataFrame:
    """
    Mean and standard deviation of the per-run values for each (algorithm, scheme).

    Writes ``summary.csv`` next to the experiment's other files.

    Raises:
        ValueError: no runs to summarize
    """
    if not outputs.records:
        raise ValueError("no runs to summarize")

    frame = pd.DataFrame(outputs.records)
    summary = frame.groupby(["algorithm", "scheme"], sort=True)["value"].agg(
        mean="mean", std=lambda s: float(np.std(s)), count="count"
    ).reset_index()

    path = FileHandler().write_csv(outputs.output_dir / "summary.csv", summary, outputs.provenance)
    outputs.files.append(path)
    log_summary({
        "experiment": outputs.kind,
        "runs": len(outputs.records),
        "failed": outputs.failed_checks,
        "rows": summary.to_dict("records"),
    })
    return summary
