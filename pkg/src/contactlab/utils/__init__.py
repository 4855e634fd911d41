"""Contactlab utils."""

import hashlib
import json
import pathlib
from typing import Any, Dict, Union


def md5(
    path: Union[str, pathlib.Path],
    chunk_size: int = 10 * 1024**2,
) -> str:
    """Get the md5 checksum of a file."""
    hash = hashlib.md5()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            hash.update(chunk)

    return hash.hexdigest()


def canonical_json(data: Dict[str, Any]) -> str:
    """Serialize to JSON with sorted keys and fixed separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_digest(data: Dict[str, Any]) -> str:
    """Return the sha256 digest of the canonical JSON of ``data``."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
