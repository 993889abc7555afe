"""Tests for experiment configuration, the runner and the summary."""

import json
from dataclasses import replace

import pytest

from src.core.experiment import derive_seed, emit_summary, run_experiment, ExperimentOutputs
from src.core.file_handler import FileHandler
from src.core.instances import gen_random, save
from src.models.errors import ConfigError
from src.models.experiment import ExperimentConfig, GenConfig
from src.models.sinr import SINRParams
from src.parsers.config_parser import apply_overrides, config_from_dict, load_config


@pytest.fixture(autouse=True)
def setup_logging(tmp_path):
    import src.utils.logger as _log
    _log.setup_logging(verbose=False, log_dir=tmp_path / "logs")


@pytest.fixture
def small_config(tmp_path):
    return ExperimentConfig(
        kind="convergence",
        gen=GenConfig(n=12, d_max=10, world=30, seed=5),
        schemes=("uniform", "mean"),
        algorithms=("game_rwm", "hw_bsearch"),
        rounds=30,
        replicates=2,
        seed=17,
        output_dir=tmp_path / "out",
    )


class TestConfigParser:

    def test_from_dict(self):
        config = config_from_dict({
            "kind": "sweep_n",
            "params": {"alpha": 3.0, "beta": 1.0},
            "gen": {"n": 40, "d_max": 5},
            "schemes": ["uniform"],
            "n_values": [10, 20],
            "output_dir": "results",
        })
        assert config.params == SINRParams(alpha=3.0, beta=1.0)
        assert config.gen.n == 40
        assert config.schemes == ("uniform",)
        assert config.n_values == (10, 20)
        assert str(config.output_dir) == "results"

    def test_unknown_field_named(self):
        with pytest.raises(ConfigError) as exc:
            config_from_dict({"params": {"gamma": 2}})
        assert exc.value.field == "params.gamma"

    def test_invalid_value_named(self):
        with pytest.raises(ConfigError) as exc:
            config_from_dict({"params": {"beta": 0}})
        assert exc.value.field == "beta"

    def test_load_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"kind": "tight", "tight_d": 9.0}))
        assert load_config(path).kind == "tight"

    def test_overrides(self):
        config = apply_overrides(ExperimentConfig(), {
            "n": 30, "alpha": 3.1, "beta": 1.0, "schemes": ["mean"], "rounds": 50, "seed": None,
        })
        assert config.gen.n == 30
        assert config.n_values == (30,)
        assert config.params.alpha == 3.1
        assert config.schemes == ("mean",)
        assert config.rounds == 50
        assert config.seed == ExperimentConfig().seed

    def test_validate(self):
        with pytest.raises(ConfigError) as exc:
            ExperimentConfig(schemes=("triangle",)).validate()
        assert exc.value.field == "schemes"
        with pytest.raises(ConfigError) as exc:
            ExperimentConfig(rounds=0).validate()
        assert exc.value.field == "rounds"


class TestRunExperiment:

    def test_convergence_files(self, small_config):
        outputs = run_experiment(small_config)
        out = small_config.output_dir
        assert (out / "convergence_game_rwm_uniform.csv").exists()
        assert (out / "convergence_game_rwm_mean.csv").exists()
        assert (out / "runs" / "convergence_game_rwm_mean_r001_links.csv").exists()

        curve = FileHandler().read_csv(out / "convergence_game_rwm_uniform.csv")
        assert list(curve.columns) == ["round", "attempts", "successes", "successes_std"]
        assert len(curve) == 30

        provenance = FileHandler().read_provenance(out / "convergence_game_rwm_uniform.csv")
        assert provenance["seed"] == 17
        assert provenance["config"]["gen"]["n"] == 12

        algorithms = {record["algorithm"] for record in outputs.records}
        assert algorithms == {"game_rwm", "hw_bsearch"}
        assert all(record["sandwich"] for record in outputs.records if record["algorithm"] == "game_rwm")

    def test_byte_identical_reruns(self, small_config, tmp_path):
        first = run_experiment(small_config)
        second = run_experiment(replace(small_config, output_dir=tmp_path / "again"))
        assert len(first.files) == len(second.files)
        for a, b in zip(first.files, second.files):
            assert a.name == b.name
            assert a.read_bytes() == b.read_bytes()

    def test_workers_match_sequential(self, small_config, tmp_path):
        sequential = run_experiment(small_config)
        parallel = run_experiment(replace(small_config, workers=2, output_dir=tmp_path / "parallel"))
        for a, b in zip(sequential.files, parallel.files):
            assert a.read_bytes() == b.read_bytes()

    def test_instance_file(self, small_config, tmp_path):
        path = tmp_path / "instance.json"
        save(gen_random(GenConfig(n=6, seed=1)), path)
        outputs = run_experiment(replace(small_config, instance_path=path, replicates=1))
        links = FileHandler().read_csv(small_config.output_dir / "runs" / "convergence_game_rwm_uniform_r000_links.csv")
        assert len(links) == 6
        assert outputs.records

    def test_sweep_n(self, tmp_path):
        config = ExperimentConfig(
            kind="sweep_n",
            schemes=("uniform",),
            algorithms=("game_rwm", "brute"),
            n_values=(5, 8),
            gen=GenConfig(world=20),
            rounds=20,
            replicates=2,
            output_dir=tmp_path,
        )
        run_experiment(config)
        means = FileHandler().read_csv(tmp_path / "sweep_n_means.csv")
        assert sorted(means["n"].unique().tolist()) == [5, 8]
        assert set(means["algorithm"]) == {"game_rwm", "brute"}
        assert (means["count"] == 2).all()

    def test_sweep_dmax_skips_hw_when_undefined(self, tmp_path):
        config = ExperimentConfig(
            kind="sweep_dmax",
            params=SINRParams(alpha=2.0),
            schemes=("mean",),
            algorithms=("hw", "hw_bsearch"),
            d_max_values=(2.0, 10.0),
            gen=GenConfig(n=10),
            replicates=1,
            output_dir=tmp_path,
        )
        run_experiment(config)
        raw = FileHandler().read_csv(tmp_path / "sweep_dmax.csv")
        assert set(raw["algorithm"]) == {"hw_bsearch"}
        assert set(raw["d_max"]) == {2.0, 10.0}

    def test_only_undefined_hw_rejected(self, tmp_path):
        config = ExperimentConfig(
            kind="sweep_dmax",
            params=SINRParams(alpha=2.0),
            schemes=("mean",),
            algorithms=("hw",),
            d_max_values=(2.0, 10.0),
            gen=GenConfig(n=10),
            replicates=1,
            output_dir=tmp_path,
        )
        with pytest.raises(ConfigError) as exc:
            run_experiment(config)
        assert exc.value.field == "algorithms"
        assert not (tmp_path / "sweep_dmax.csv").exists()

    def test_brute_too_large(self, tmp_path):
        config = ExperimentConfig(algorithms=("brute",), gen=GenConfig(n=50), output_dir=tmp_path)
        with pytest.raises(ConfigError) as exc:
            run_experiment(config)
        assert exc.value.field == "algorithms"

    def test_tight(self, tmp_path):
        config = ExperimentConfig(
            kind="tight",
            params=SINRParams(alpha=2.0, beta=1.0),
            schemes=("linear", "path_loss"),
            rounds=100,
            tight_d=9.0,
            output_dir=tmp_path,
        )
        run_experiment(config)
        table = FileHandler().read_csv(tmp_path / "tight.csv").set_index("scheme")
        assert table.loc["linear", "opt"] == 10
        assert table.loc["path_loss", "opt"] == 9
        assert table.loc["linear", "short_set_feasible"]
        assert table.loc["path_loss", "Q_dominant_start"] == pytest.approx(1.0)
        assert table.loc["path_loss", "max_regret_dominant_start"] == pytest.approx(0.0, abs=1e-9)

    def test_verify_suite(self, tmp_path):
        config = ExperimentConfig(
            kind="verify_suite",
            schemes=("uniform", "mean"),
            gen=GenConfig(n=15, d_max=10, world=30),
            rounds=200,
            replicates=2,
            output_dir=tmp_path,
        )
        outputs = run_experiment(config)
        assert outputs.failed_checks == 0
        log = FileHandler().read_csv(tmp_path / "verify_log.csv")
        assert list(log.columns) == ["check", "instance_id", "pass", "key_metric"]
        assert {"half_set", "separation", "sandwich", "failure_fraction"} <= set(log["check"])
        assert log["pass"].all()


class TestSummary:

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_summary(ExperimentOutputs(kind="convergence", output_dir=tmp_path, provenance={}))

    def test_single_run_zero_std(self, tmp_path):
        outputs = ExperimentOutputs(kind="convergence", output_dir=tmp_path, provenance={"seed": 1})
        outputs.records.append({"algorithm": "game_rwm", "scheme": "uniform", "value": 7.0})
        summary = emit_summary(outputs)
        assert summary.loc[0, "std"] == 0.0
        assert summary.loc[0, "mean"] == 7.0
        assert (tmp_path / "summary.csv").exists()

    def test_mean_matches_per_run_files(self, small_config):
        outputs = run_experiment(small_config)
        summary = emit_summary(outputs).set_index(["algorithm", "scheme"])
        handler = FileHandler()
        finals = []
        for r in range(small_config.replicates):
            runs = handler.read_csv(small_config.output_dir / "runs" / f"convergence_game_rwm_uniform_r{r:03d}.csv")
            finals.append(runs["successes"].mean())
        assert summary.loc[("game_rwm", "uniform"), "mean"] == pytest.approx(sum(finals) / len(finals))


class TestSeeds:

    def test_derive_seed_stable(self):
        assert derive_seed(2011, 0, 1) == derive_seed(2011, 0, 1)
        assert derive_seed(2011, 0, 1) != derive_seed(2011, 1, 0)
