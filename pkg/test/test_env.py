from unittest.mock import patch

import pytest

from pathex import env
from pathex.errors import PathExError


class TestEnv:
    @patch.object(env, "load_dotenv")
    def test_load_env(self, mock_load):
        env._load_env()
        mock_load.assert_called_once_with(".env", override=True)

    @patch.object(env, "os")
    def test_int_setting_default(self, mock_os):
        mock_os.environ = {}
        assert env._int_setting("PATHEX_WORKERS", 1) == 1

    @patch.object(env, "os")
    def test_int_setting_empty(self, mock_os):
        mock_os.environ = {"PATHEX_WORKERS": ""}
        assert env._int_setting("PATHEX_WORKERS", 3) == 3

    @patch.object(env, "os")
    def test_int_setting(self, mock_os):
        mock_os.environ = {"PATHEX_NODE_LIMIT": "1000"}
        assert env._int_setting("PATHEX_NODE_LIMIT", env.DEFAULT_NODE_LIMIT) == 1000

    @patch.object(env, "os")
    def test_int_setting_not_integer(self, mock_os):
        mock_os.environ = {"PATHEX_WORKERS": "many"}
        with pytest.raises(PathExError):
            env._int_setting("PATHEX_WORKERS", 1)

    @patch.object(env, "os")
    def test_int_setting_below_minimum(self, mock_os):
        mock_os.environ = {"PATHEX_WORKERS": "0"}
        with pytest.raises(PathExError):
            env._int_setting("PATHEX_WORKERS", 1)

    @patch.object(env, "os")
    def test_float_setting_unset(self, mock_os):
        mock_os.environ = {}
        assert env._float_setting("PATHEX_TIME_LIMIT") is None

    @patch.object(env, "os")
    def test_float_setting(self, mock_os):
        mock_os.environ = {"PATHEX_TIME_LIMIT": "2.5"}
        assert env._float_setting("PATHEX_TIME_LIMIT") == 2.5

    @patch.object(env, "os")
    def test_float_setting_invalid(self, mock_os):
        mock_os.environ = {"PATHEX_TIME_LIMIT": "soon"}
        with pytest.raises(PathExError):
            env._float_setting("PATHEX_TIME_LIMIT")

    @patch.object(env, "os")
    def test_float_setting_not_positive(self, mock_os):
        mock_os.environ = {"PATHEX_TIME_LIMIT": "0"}
        with pytest.raises(PathExError):
            env._float_setting("PATHEX_TIME_LIMIT")

    def test_defaults(self):
        assert env.DEFAULT_NODE_LIMIT == 50_000_000
        assert env.PATHEX_DEBUG_ENV == "PATHEX_DEBUG"
