#!/usr/bin/env python3
"""
Unit tests for the utility modules: logging, error handling, experiment
configs, artifacts, input files and numeric settings.
"""

import json
import logging
import os
import shutil
import sys
import tempfile
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config.settings import DEFAULT_CONFIG, load_config, save_config, tolerance_summary
from src.core.exponents import ExponentSequence
from src.core.muntz import MuntzPolynomial
from src.fourier.trig import TrigPolynomial
from src.basis.elimination import gaussian_exclusion
from src.utils.config_loader import (
    ConfigLoader,
    ExperimentConfig,
    command_schema,
    parse_float_list,
    parse_int_list,
    parse_lambda
)
from src.utils.error_handler import (
    AccuracyError,
    ConfigurationError,
    DivisionError,
    DomainError,
    ErrorHandler,
    ExitCode,
    OptimizationError,
    PreconditionError,
    TruncationError
)
from src.utils.file_handler import FileHandler
from src.utils.logger import LoggerMixin, ProgressLogger, get_logger, setup_logging
from src.utils.output_formatter import OutputFormatter, to_jsonable
from src.weil.psi import PsiWeight

pytestmark = pytest.mark.unit


class TestLogger:
    """Test logging setup."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        logging.getLogger().handlers.clear()
        shutil.rmtree(self.temp_dir)

    def test_setup_logging_returns_app_logger(self):
        """The application logger is named after the package."""
        logger = setup_logging(level="WARNING")

        assert logger.name == "muntzbasis"
        assert len(logging.getLogger().handlers) == 1

    def test_setup_logging_with_file(self):
        """A log file adds a second handler and receives debug records."""
        log_file = Path(self.temp_dir) / "logs" / "run.log"
        logger = setup_logging(verbose=True, log_file=log_file)
        logger.debug("solver started")
        for handler in logging.getLogger().handlers:
            handler.flush()

        assert len(logging.getLogger().handlers) == 2
        assert "solver started" in log_file.read_text(encoding="utf-8")

    def test_logger_mixin(self):
        """Classes using the mixin log under their module and class name."""
        class Solver(LoggerMixin):
            pass

        assert Solver().logger.name.endswith("Solver")
        assert get_logger().name == "muntzbasis"

    def test_progress_logger(self):
        """Progress counts up to the total."""
        progress = ProgressLogger(3, "Sampling", get_logger())
        progress.update()
        progress.update(2)
        progress.complete()

        assert progress.processed_items == 3


class TestErrorHandler:
    """Test error categorization and exit codes."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.handler = ErrorHandler()

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def test_exit_codes_by_category(self):
        """Each error family maps to its CLI exit status."""
        cases = [
            (DomainError("x outside [0, 1]"), ExitCode.PRECONDITION),
            (PreconditionError("n must be positive"), ExitCode.PRECONDITION),
            (TruncationError("K too small"), ExitCode.PRECONDITION),
            (DivisionError(3), ExitCode.PRECONDITION),
            (ConfigurationError("unknown key"), ExitCode.PRECONDITION),
            (ValueError("bad number"), ExitCode.PRECONDITION),
            (AccuracyError("tolerance not met", best_estimate=0.5), ExitCode.ACCURACY),
            (OptimizationError("solver failed", trace={"status": 2}), ExitCode.ACCURACY),
            (FileNotFoundError("missing.json"), ExitCode.IO),
            (json.JSONDecodeError("Expecting value", "", 0), ExitCode.IO),
            (RuntimeError("boom"), ExitCode.UNEXPECTED),
        ]
        for error, code in cases:
            assert self.handler.exit_code_for(error) == code, type(error).__name__

    def test_exit_code_values(self):
        """Exit statuses are fixed integers."""
        assert (ExitCode.SUCCESS, ExitCode.UNEXPECTED, ExitCode.PRECONDITION,
                ExitCode.ACCURACY, ExitCode.IO) == (0, 1, 2, 3, 4)

    def test_division_error_carries_harmonic(self):
        """The failing harmonic index is kept on the error."""
        error = DivisionError(5)

        assert error.k == 5
        assert "5" in str(error)

    def test_handle_error_records_history(self):
        """Handled errors are counted and summarized."""
        result = self.handler.handle_error(AccuracyError("gap too large", best_estimate=0.25),
                                           {"command": "best-approx"})

        assert result['error_handled']
        assert result['exit_code'] == ExitCode.ACCURACY
        assert result['error_id'] == "ERR_0001"
        assert self.handler.error_history[0]['best_estimate'] == 0.25

        summary = self.handler.get_error_summary()
        assert summary['total_errors'] == 1
        assert summary['by_category'] == {"ACCURACY": 1}

    def test_empty_summary(self):
        """No handled errors gives an empty summary."""
        assert self.handler.get_error_summary()['total_errors'] == 0

    def test_error_context(self):
        """Library errors carry a context mapping into the record."""
        self.handler.handle_error(DomainError("bad delta", context={'delta': 1.5}))

        assert self.handler.error_history[0]['error_context'] == {'delta': 1.5}

    def test_export_error_report(self):
        """Reports are written as JSON."""
        self.handler.handle_error(ValueError("bad"))
        path = self.handler.export_error_report(os.path.join(self.temp_dir, "errors.json"))

        with open(path, 'r', encoding='utf-8') as f:
            report = json.load(f)
        assert report['summary']['total_errors'] == 1
        assert report['detailed_errors'][0]['category'] == "USER_INPUT"


class TestConfigLoader:
    """Test experiment config parsing, merging and validation."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.loader = ConfigLoader()

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def write(self, name, data):
        path = os.path.join(self.temp_dir, name)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f)
        return path

    def test_parse_int_list(self):
        """Ranges and single values mix."""
        assert parse_int_list("1..4,8") == [1, 2, 3, 4, 8]
        assert parse_int_list("2, 4") == [2, 4]
        with pytest.raises(ConfigurationError):
            parse_int_list("")

    def test_parse_float_list(self):
        """Comma separated numbers."""
        assert parse_float_list("0.01,0.1") == [0.01, 0.1]
        with pytest.raises(ConfigurationError):
            parse_float_list(" , ")

    def test_parse_lambda(self):
        """The --lambda shorthand expands to rule parameters."""
        assert parse_lambda("power:2") == {"rule": "power", "p": 2.0}
        assert parse_lambda("geometric:3") == {"rule": "geometric", "base": 3.0}
        assert parse_lambda("explicit:1,2.5") == {"rule": "explicit", "values": [1.0, 2.5]}
        with pytest.raises(ConfigurationError):
            parse_lambda("power:x")
        with pytest.raises(ConfigurationError):
            parse_lambda("cubic:1")

    def test_command_schema(self):
        """Schemas reject unknown keys; unknown commands are errors."""
        schema = command_schema("theorem5")

        assert schema["additionalProperties"] is False
        assert schema["required"] == ["from", "to"]
        with pytest.raises(ConfigurationError):
            command_schema("compile")

    def test_resolve_defaults(self):
        """Without flags or a file the command defaults apply."""
        config = self.loader.resolve("check-lambda", {})

        assert config.params == {"rule": "power", "p": 2.0, "N": 1000}
        assert config.seed == 0x5EED
        assert config.format == "json"
        assert config.output is None

    def test_resolve_user_rule_drops_default_parameters(self):
        """A rule given by the user replaces the default rule's parameters."""
        config = self.loader.resolve("check-lambda", {"params": {"rule": "geometric", "base": 3.0}})

        assert config.params == {"rule": "geometric", "base": 3.0, "N": 1000}

    def test_resolve_rejects_unknown_and_invalid_params(self):
        """Unknown keys and out-of-range values fail validation."""
        with pytest.raises(ConfigurationError):
            self.loader.resolve("check-lambda", {"params": {"bogus": 1}})
        with pytest.raises(ConfigurationError):
            self.loader.resolve("check-lambda", {"params": {"N": 0}})
        with pytest.raises(ConfigurationError):
            self.loader.resolve("lebesgue", {"format": "xml"})

    def test_resolve_merges_file_and_flags(self):
        """Flags win over the file; params merge key by key."""
        path = self.write("exp.json", {"command": "lebesgue", "params": {"method": "dirichlet", "n": [1, 2]},
                                       "seed": 7})
        config = self.loader.resolve("lebesgue", {"params": {"n": [4]}, "format": "csv"}, path)

        assert config.params["method"] == "dirichlet"
        assert config.params["n"] == [4]
        assert config.seed == 7
        assert config.format == "csv"

    def test_resolve_rejects_file_for_other_command(self):
        """A config written for another command is an error."""
        path = self.write("exp.json", {"command": "asymptotic"})

        with pytest.raises(ConfigurationError):
            self.loader.resolve("lebesgue", {}, path)

    def test_load_experiment_validates_file_shape(self):
        """Top-level keys outside the file schema are rejected."""
        path = self.write("exp.json", {"command": "lebesgue", "verbose": True})

        with pytest.raises(ConfigurationError):
            self.loader.load_experiment(path)

    def test_save_experiment_replays(self):
        """A saved config resolves to the same experiment."""
        config = self.loader.resolve("asymptotic", {"params": {"alpha": 0.3}, "seed": 11})
        path = os.path.join(self.temp_dir, "saved", "exp.json")
        self.loader.save_experiment(config, path)

        assert self.loader.resolve("asymptotic", {}, path) == config
        assert ExperimentConfig("asymptotic").to_dict()["seed"] == 0x5EED


class TestOutputFormatter:
    """Test JSON and CSV artifacts."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.formatter = OutputFormatter({"quad_tol": 1e-10})
        self.config = {"command": "lebesgue", "seed": 5}

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def test_to_jsonable(self):
        """numpy values and objects with to_dict become plain JSON types."""
        value = {"x": np.float64(1.5), "n": np.int64(3), "ok": np.bool_(True),
                 "v": np.array([1.0, 2.0]), "t": (1, 2), "p": TrigPolynomial.cosine(1)}

        assert to_jsonable(value) == {"x": 1.5, "n": 3, "ok": True, "v": [1.0, 2.0], "t": [1, 2],
                                      "p": {"a0": 0.0, "harmonics": [[1.0, 0.0]]}}

    def test_render_json_sections(self):
        """JSON artifacts carry version, tolerances, config, seed and result."""
        text = self.formatter.render_json({"value": np.float64(0.25)}, self.config)
        document = json.loads(text)

        assert text.endswith("\n")
        assert set(document) == {"muntzbasis", "config", "seed", "result"}
        assert document["muntzbasis"] == {"version": "0.1.0", "tolerances": {"quad_tol": 1e-10}}
        assert document["seed"] == 5
        assert document["result"] == {"value": 0.25}

    def test_render_json_is_deterministic(self):
        """Sorted keys make artifacts byte-stable."""
        first = self.formatter.render_json({"b": 1, "a": 2}, self.config)
        second = self.formatter.render_json({"a": 2, "b": 1}, self.config)

        assert first == second

    def test_render_csv(self):
        """CSV tables open with comment lines and a header row."""
        rows = [{"n": 1, "value": 1.0, "ok": True}, {"n": 2, "value": float("inf"), "ok": None}]
        lines = self.formatter.render_csv(rows, ["n", "value", "ok"], self.config).splitlines()

        assert lines[0] == "# muntzbasis: 0.1.0"
        assert lines[3] == "# seed: 5"
        assert lines[4] == "n,value,ok"
        assert lines[5] == "1,1.0,true"
        assert lines[6] == "2,inf,"

    def test_save_artifacts(self):
        """Artifacts are written under missing directories."""
        json_path = self.formatter.save_json({"a": 1}, self.config, Path(self.temp_dir) / "out" / "r.json")
        csv_path = self.formatter.save_csv([{"n": 1}], ["n"], self.config, Path(self.temp_dir) / "r.csv")

        assert json.loads(json_path.read_text(encoding="utf-8"))["result"] == {"a": 1}
        assert csv_path.read_text(encoding="utf-8").splitlines()[-1] == "1"
        assert self.formatter.get_supported_formats() == ["json", "csv"]


class TestFileHandler:
    """Test loading of experiment input files."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.handler = FileHandler()

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def path(self, name):
        return os.path.join(self.temp_dir, name)

    def test_missing_file(self):
        """Missing files raise FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            self.handler.load_json_file(self.path("absent.json"))

    def test_malformed_json(self):
        """Malformed JSON propagates as a decode error."""
        with open(self.path("bad.json"), 'w', encoding='utf-8') as f:
            f.write("{not json")

        with pytest.raises(json.JSONDecodeError):
            self.handler.load_json_file(self.path("bad.json"))

    def test_load_sequence(self):
        """Sequences load from their dict form."""
        self.handler.save_json_file(ExponentSequence.power(2, 4).to_dict(), self.path("seq.json"))
        seq = self.handler.load_sequence(self.path("seq.json"))

        assert [float(v) for v in seq.exponents] == [1.0, 4.0, 9.0, 16.0]

    def test_load_trig_psi_and_muntz(self):
        """Polynomials and weights load from their dict forms."""
        p = TrigPolynomial(1.0, ((0.5, -0.25),))
        psi = PsiWeight.power(2.0, 0.5, 64)
        h = MuntzPolynomial.from_terms([(2.0, 1.0), (3.5, -2.0)])
        self.handler.save_json_file(p.to_dict(), self.path("p.json"))
        self.handler.save_json_file(psi.to_dict(), self.path("psi.json"))
        self.handler.save_json_file(h.to_dict(), self.path("h.json"))

        assert self.handler.load_trig(self.path("p.json")) == p
        assert self.handler.load_psi(self.path("psi.json")) == psi
        assert self.handler.load_muntz(self.path("h.json")).to_dict() == h.to_dict()

    def test_wrong_file_shape(self):
        """Files missing their required keys are configuration errors."""
        self.handler.save_json_file({"terms": [[2.0, 1.0]]}, self.path("h.json"))

        with pytest.raises(ConfigurationError):
            self.handler.load_trig(self.path("h.json"))
        with pytest.raises(ConfigurationError):
            self.handler.load_targets(self.path("h.json"))

    def test_load_targets(self):
        """One target list or a chain of them."""
        self.handler.save_json_file({"exponents": [2.5, 4]}, self.path("one.json"))
        self.handler.save_json_file({"targets": [[2.25], [2.5]]}, self.path("chain.json"))

        assert self.handler.load_targets(self.path("one.json")) == [[2.5, 4.0]]
        assert self.handler.load_targets(self.path("chain.json")) == [[2.25], [2.5]]

    def test_load_step_system_from_artifact(self):
        """basis-build artifacts carry the system under result.system."""
        system = gaussian_exclusion([TrigPolynomial.constant(1.0), TrigPolynomial.sine(1)])
        self.handler.save_json_file({"result": {"system": system.to_dict()}}, self.path("basis.json"))
        self.handler.save_json_file(system.to_dict(), self.path("system.json"))

        assert self.handler.load_step_system(self.path("basis.json")).lead_columns == (1, 3)
        assert self.handler.load_step_system(self.path("system.json")).lead_columns == (1, 3)


class TestSettings:
    """Test numeric settings and environment overrides."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        shutil.rmtree(self.temp_dir)

    def test_defaults(self):
        """Without a file or environment the defaults apply."""
        with patch.dict(os.environ, {}, clear=True):
            config = load_config()

        assert config == DEFAULT_CONFIG

    def test_env_overrides(self):
        """MUNTZ_* variables override defaults; seeds accept hex."""
        env = {'MUNTZ_QUAD_TOL': '1e-12', 'MUNTZ_SEED': '0x10', 'MUNTZ_VERBOSE': 'yes'}
        with patch.dict(os.environ, env, clear=True):
            config = load_config()

        assert config['quad_tol'] == 1e-12
        assert config['seed'] == 16
        assert config['verbose'] is True

    def test_invalid_env_value_is_ignored(self):
        """Unparseable overrides keep the default."""
        with patch.dict(os.environ, {'MUNTZ_GRID_FACTOR': 'many'}, clear=True):
            config = load_config()

        assert config['grid_factor'] == DEFAULT_CONFIG['grid_factor']

    def test_config_file(self):
        """File values apply; unknown keys and invalid values are dropped."""
        path = os.path.join(self.temp_dir, "config.json")
        save_config({'kernel_tol': 1e-6, 'pivot_tol': -1.0, 'colour': 'blue'}, path)
        with patch.dict(os.environ, {}, clear=True):
            config = load_config(path)

        assert config['kernel_tol'] == 1e-6
        assert config['pivot_tol'] == DEFAULT_CONFIG['pivot_tol']
        assert 'colour' not in config

    def test_tolerance_summary(self):
        """Artifacts embed the numeric tolerances only."""
        summary = tolerance_summary(DEFAULT_CONFIG)

        assert summary['quad_tol'] == DEFAULT_CONFIG['quad_tol']
        assert 'seed' not in summary
        assert 'log_level' not in summary
