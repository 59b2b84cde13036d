import dataclasses
import json
import logging
import os
from enum import Enum
from pathlib import Path
from typing import Any, Union

#: Type for any acceptable path
AnyPath = Union[str, os.PathLike]

logger = logging.getLogger(__name__)


def init_pathex() -> None:
    """
    Initialize the pathex module. This sets up the pathex logger, which writes to the
    diagnostic stream (stderr), and loads the environment settings. Entry points call
    this before doing any work.
    """
    # make sure environment variables are setup
    from . import env

    logging.basicConfig(
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        datefmt="%H:%M:%S",
        level=logging.INFO,
    )

    if env.PATHEX_DEBUG:
        enable_pathex_debug_mode()


def enable_pathex_debug_mode() -> None:
    """
    Run pathex with debug logging enabled.
    """
    from . import env

    logging.getLogger("pathex").setLevel(logging.DEBUG)
    os.environ[env.PATHEX_DEBUG_ENV] = "1"


class PathExJsonEncoder(json.JSONEncoder):
    """
    Provides JSON encoding for pathex records: enums by value, dataclasses as
    dictionaries, sets as sorted lists and paths as strings.
    """

    def default(self, obj: Any) -> Any:
        if isinstance(obj, Enum):
            return obj.value
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return dataclasses.asdict(obj)
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        if isinstance(obj, Path):
            return str(obj)
        return super().default(obj)


def dump_record(record: Any) -> str:
    """
    :returns: ``record`` as a single JSON line with sorted keys
    """
    return json.dumps(record, cls=PathExJsonEncoder, sort_keys=True)
