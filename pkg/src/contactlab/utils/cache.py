"""Cache util functions for census runs."""

import logging
import os
import pickle
import sys
from shutil import rmtree
from typing import Any, Optional

try:
    from importlib.metadata import PackageNotFoundError, version
except ImportError:
    from importlib_metadata import PackageNotFoundError, version

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "CONTACTLAB_CACHE_DIR"


def _default_cache_dir() -> str:
    """Return default cache directory specific for the current OS."""
    if sys.platform == "darwin":
        base = os.path.expanduser("~/Library/Caches")
    elif sys.platform == "win32":
        base = os.getenv("APPDATA", os.path.expanduser("~/AppData/Local"))
    elif os.name == "posix":
        base = os.getenv("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    else:
        base = os.path.expanduser("~/.cache")
    return base


def cache_dir_base() -> str:
    """Return the base contactlab cache directory.

    The CONTACTLAB_CACHE_DIR environment variable takes precedence.
    """
    return os.getenv(CACHE_DIR_ENV) or os.path.join(_default_cache_dir(), "contactlab")


def cache_dir_contactlab() -> str:
    """Return the cache directory of the installed contactlab version."""
    try:
        v = version("contactlab")
    except PackageNotFoundError:
        v = "unknown"
    if "dev" in v:
        # remove git commit hash
        v = v[: v.find("dev") + 3]
    return os.path.join(cache_dir_base(), v)


def clear_cache_dir() -> None:
    """Delete all cache files from the base cache directory."""
    cache_dir = cache_dir_base()
    if os.path.exists(cache_dir):
        rmtree(cache_dir)


def cache_file(cache_dir: Optional[str], digest: str, k: int) -> str:
    """Return the pickle path of iterate ``k`` of the run with config ``digest``."""
    cache_dir = cache_dir or cache_dir_contactlab()
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, f"{digest[:16]}_k{k}.pickle")


def load_pickle(pickle_file: str) -> Any:
    """Load object from the pickle file, None if it does not exist.

    :param pickle_file: file path
    :return: un-pickled object
    """
    if os.path.exists(pickle_file):
        with open(pickle_file, "rb") as handle:
            logger.debug("Loading cached result %s", pickle_file)
            return pickle.load(handle)


def save_pickle(obj: Any, pickle_file: str, override=False) -> None:
    """Save given object into a pickle file.

    :param obj: object to be pickled
    :param pickle_file: file path
    :param override: if True then override existing file
    """
    if not os.path.exists(pickle_file) or override:
        with open(pickle_file, "wb") as handle:
            pickle.dump(obj, handle, protocol=pickle.HIGHEST_PROTOCOL)
