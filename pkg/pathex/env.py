import os
from typing import Optional

from dotenv import load_dotenv

from .errors import PathExError

__all__ = (
    "PATHEX_DEBUG",
    "PATHEX_DEBUG_ENV",
    "PATHEX_NODE_LIMIT",
    "PATHEX_TIME_LIMIT",
    "PATHEX_WORKERS",
    "PATHEX_ORACLE_MAX_N",
    "DEFAULT_NODE_LIMIT",
)

#: Detector node budget used when ``PATHEX_NODE_LIMIT`` is not set
DEFAULT_NODE_LIMIT = 50_000_000


def _load_env() -> None:
    """
    Load pathex environment variables from the ``.env`` file. No variable is
    required; every setting falls back to a default.

    This method is called automatically on first import.
    """
    load_dotenv(".env", override=True)


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default

    try:
        value = int(raw)
    except ValueError as err:
        raise PathExError(f"{name} must be an integer: {raw!r}") from err

    if value < minimum:
        raise PathExError(f"{name} must be at least {minimum}: {value}")
    return value


def _float_setting(name: str) -> Optional[float]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None

    try:
        value = float(raw)
    except ValueError as err:
        raise PathExError(f"{name} must be a number of seconds: {raw!r}") from err

    if value <= 0:
        raise PathExError(f"{name} must be positive: {value}")
    return value


_load_env()

#: The environment variable name for the PATHEX_DEBUG value
PATHEX_DEBUG_ENV = "PATHEX_DEBUG"
#: pathex is running in debug mode
PATHEX_DEBUG = os.environ.get(PATHEX_DEBUG_ENV) == "1"
#: Default maximum number of backtracking nodes for one detector call
PATHEX_NODE_LIMIT = _int_setting("PATHEX_NODE_LIMIT", DEFAULT_NODE_LIMIT)
#: Default wall-clock guard, in seconds, for one detector call (None disables it)
PATHEX_TIME_LIMIT = _float_setting("PATHEX_TIME_LIMIT")
#: Default number of worker processes used by the oracle
PATHEX_WORKERS = _int_setting("PATHEX_WORKERS", 1)
#: Largest vertex count the oracle accepts without the long-run flag
PATHEX_ORACLE_MAX_N = _int_setting("PATHEX_ORACLE_MAX_N", 9)
