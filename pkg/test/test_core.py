import json
from enum import Enum
from pathlib import Path
from unittest.mock import patch

import pytest

from pathex import core, env
from pathex.formulas import PathForest


class Color(Enum):
    RED = "red"


class TestCore:
    @patch.object(core, "logging")
    @patch.object(core, "os")
    @patch.object(env, "PATHEX_DEBUG", new=False)
    def test_init_pathex(self, mock_os, mock_logging):
        core.init_pathex()
        mock_logging.basicConfig.assert_called_once()
        mock_logging.getLogger.assert_not_called()

    @patch.object(core, "logging")
    @patch.object(core, "os")
    @patch.object(core, "enable_pathex_debug_mode")
    @patch.object(env, "PATHEX_DEBUG", new=True)
    def test_init_pathex_debug(self, mock_debug, mock_os, mock_logging):
        core.init_pathex()
        mock_logging.basicConfig.assert_called_once()
        mock_debug.assert_called_once()

    @patch.object(core, "logging")
    @patch.object(core, "os")
    def test_enable_pathex_debug_mode(self, mock_os, mock_logging):
        mock_os.environ = {}
        core.enable_pathex_debug_mode()
        mock_logging.getLogger.assert_called_once_with("pathex")
        mock_logging.getLogger.return_value.setLevel.assert_called_once_with(
            mock_logging.DEBUG
        )
        assert mock_os.environ == {"PATHEX_DEBUG": "1"}


class TestJsonEncoder:
    def test_enum(self):
        assert core.dump_record({"color": Color.RED}) == '{"color": "red"}'

    def test_dataclass(self):
        record = json.loads(core.dump_record({"forest": PathForest.of(7, 7)}))
        assert record == {"forest": {"orders": [7, 7]}}

    def test_set_and_path(self):
        record = json.loads(core.dump_record({"a": {3, 1}, "b": Path("/tmp/x")}))
        assert record == {"a": [1, 3], "b": "/tmp/x"}

    def test_sorted_keys(self):
        assert core.dump_record({"b": 1, "a": 2}) == '{"a": 2, "b": 1}'

    def test_unknown(self):
        with pytest.raises(TypeError):
            core.dump_record({"a": object()})
