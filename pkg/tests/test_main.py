"""Tests for the command-line entry point."""

import json

import pytest

from src import main as cli
from src.core.experiment import ExperimentOutputs
from src.models.errors import ConfigError


def run_cli(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    return exc.value.code


class TestMain:

    @pytest.fixture
    def outputs(self, tmp_path):
        outputs = ExperimentOutputs(kind="convergence", output_dir=tmp_path, provenance={})
        outputs.records.append({"algorithm": "game_rwm", "scheme": "uniform", "value": 1.0})
        return outputs

    def test_success_exit_code(self, mocker, tmp_path, outputs):
        run = mocker.patch("src.main.run_experiment", return_value=outputs)
        summary = mocker.patch("src.main.emit_summary")
        assert run_cli(["--experiment", "convergence", "--n", "20", "--out", str(tmp_path)]) == 0
        config = run.call_args[0][0]
        assert config.gen.n == 20
        assert config.output_dir == tmp_path
        summary.assert_called_once_with(outputs)

    def test_overrides_reach_config(self, mocker, tmp_path, outputs):
        run = mocker.patch("src.main.run_experiment", return_value=outputs)
        mocker.patch("src.main.emit_summary")
        argv = [
            "--alpha", "3.1", "--beta", "1.0", "--scheme", "mean", "--scheme", "linear",
            "--algo", "hw_bsearch", "--rounds", "40", "--replicates", "3", "--seed", "9",
            "--out", str(tmp_path),
        ]
        assert run_cli(argv) == 0
        config = run.call_args[0][0]
        assert config.params.alpha == 3.1
        assert config.schemes == ("mean", "linear")
        assert config.algorithms == ("hw_bsearch",)
        assert (config.rounds, config.replicates, config.seed) == (40, 3, 9)

    def test_config_file(self, mocker, tmp_path, outputs):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"kind": "sweep_dmax", "d_max_values": [5, 10]}))
        run = mocker.patch("src.main.run_experiment", return_value=outputs)
        mocker.patch("src.main.emit_summary")
        assert run_cli(["--config", str(path), "--out", str(tmp_path)]) == 0
        assert run.call_args[0][0].d_max_values == (5, 10)

    def test_config_error_exit_code(self, mocker, tmp_path):
        mocker.patch("src.main.run_experiment", side_effect=ConfigError("rounds", "must be >= 1"))
        assert run_cli(["--out", str(tmp_path)]) == 1

    def test_invalid_value_exit_code(self, tmp_path):
        assert run_cli(["--rounds", "0", "--out", str(tmp_path)]) == 1

    def test_missing_config_file(self, tmp_path):
        assert run_cli(["--config", str(tmp_path / "absent.json"), "--out", str(tmp_path)]) == 1

    def test_failed_checks_exit_code(self, mocker, tmp_path, outputs):
        outputs.failed_checks = 3
        mocker.patch("src.main.run_experiment", return_value=outputs)
        mocker.patch("src.main.emit_summary")
        assert run_cli(["--experiment", "verify_suite", "--out", str(tmp_path)]) == 2

    def test_runtime_error_exit_code(self, mocker, tmp_path):
        mocker.patch("src.main.run_experiment", side_effect=RuntimeError("worker crashed"))
        assert run_cli(["--out", str(tmp_path)]) == 3
        log_text = (tmp_path / "logs" / "sinr_game_errors.log").read_text()
        assert "RuntimeError: worker crashed" in log_text

    def test_error_logged_to_file(self, tmp_path):
        run_cli(["--beta", "-1", "--out", str(tmp_path)])
        log_file = tmp_path / "logs" / "sinr_game_errors.log"
        assert log_file.exists()
        assert "beta" in log_file.read_text()

    def test_end_to_end(self, tmp_path):
        argv = ["--experiment", "convergence", "--n", "8", "--rounds", "20", "--replicates", "2",
                "--scheme", "uniform", "--out", str(tmp_path)]
        assert run_cli(argv) == 0
        assert (tmp_path / "summary.csv").exists()
        assert (tmp_path / "convergence_game_rwm_uniform.csv").exists()
