import json
import logging
import math
from fractions import Fraction

import numpy as np
import pytest

from src.graph.catalog import signed_triangle
from src.utils.config import Config
from src.utils.logger import setup_logger
from src.utils.report_format import build_report, round_float, save_report, to_json, to_plain, to_table
from src.utils.shared_config import DEFAULTS, ENV_PREFIX, get_default_config


class TestConfig:
    def test_defaults(self):
        config = get_default_config(environ={})
        assert config.frustration_size_limit == 24
        assert config.cheeger_size_limit == 20
        assert config.sign_scan_edge_limit == 20
        assert config.p_restarts == 50
        assert config.workers == 1

    def test_environment_overrides(self):
        config = get_default_config(environ={ENV_PREFIX + "WORKERS": "4", ENV_PREFIX + "LOG_LEVEL": " debug "})
        assert config.workers == 4
        assert config.log_level == "DEBUG"

    def test_blank_override_is_ignored(self):
        assert get_default_config(environ={ENV_PREFIX + "P_RESTARTS": "  "}).p_restarts == 50

    @pytest.mark.parametrize(
        "key, value",
        [
            ("WORKERS", "0"),
            ("CHEEGER_SIZE_LIMIT", "-1"),
            ("BOUND_TOLERANCE", "0.5"),
            ("ZERO_TOLERANCE", "0"),
            ("RANDOM_SEED", "-3"),
            ("REPORT_DIR", " "),
        ],
    )
    def test_invalid_values(self, key, value):
        with pytest.raises(ValueError):
            Config({**DEFAULTS, key: value})

    def test_with_overrides(self):
        config = get_default_config(environ={})
        changed = config.with_overrides({"RANDOM_SEED": 7, "P_RESTARTS": None})
        assert changed.random_seed == 7
        assert changed.p_restarts == config.p_restarts
        assert config.random_seed == 20240611

    def test_as_dict_round_trips(self):
        config = get_default_config(environ={ENV_PREFIX + "BOUND_TOLERANCE": "1e-7"})
        assert Config(config.as_dict()).bound_tolerance == 1e-7


class TestReportFormat:
    def test_round_float(self):
        assert round_float(1 / 3) == 0.333333333333
        assert round_float(math.inf) == "inf"
        assert round_float(-math.inf) == "-inf"
        assert round_float(math.nan) == "nan"

    def test_to_plain(self):
        value = {"a": np.array([1.0, 2.0]), "b": np.int64(3), "c": Fraction(1, 3), "d": (np.bool_(True),)}
        assert to_plain(value) == {"a": [1.0, 2.0], "b": 3, "c": "1/3", "d": [True]}

    def test_report_is_deterministic(self):
        report = build_report("cheeger", signed_triangle(), {"h": 1 / 3, "witness": ["1", "2", "3"]})
        text = to_json(report)
        assert text == to_json(build_report("cheeger", signed_triangle(), {"witness": ["1", "2", "3"], "h": 1 / 3}))
        parsed = json.loads(text)
        assert parsed["schema_version"] == "1.0"
        assert parsed["graph"]["negative_edges"] == [["1", "3"]]
        assert parsed["graph"]["balanced"] is False

    def test_table(self):
        table = to_table([{"theorem": "buser", "margin": 0.25}, {"theorem": "volume", "status": "pass"}])
        assert "buser" in table
        assert "status" in table
        assert to_table([]) == ""

    def test_save_report(self, tmp_path, logger):
        report = build_report("frustration", signed_triangle(), {"iota": 2})
        path = save_report(report, str(tmp_path / "out"), "triangle", logger)
        assert path.endswith("triangle.json")
        assert json.loads(open(path, encoding="utf-8").read())["result"] == {"iota": 2}


class TestLogger:
    def test_handlers_are_attached_once(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        first = setup_logger("tests.once", str(log_file))
        second = setup_logger("tests.once", str(log_file), level="DEBUG")
        assert first is second
        assert len(second.handlers) == 2
        assert second.level == logging.DEBUG
        second.info("written")
        for handler in second.handlers:
            handler.flush()
        assert "written" in log_file.read_text()
