""".. Ignore pydocstyle D400.

=============
Configuration
=============

Experiment configuration files are JSON objects:

.. code-block:: json

    {
        "family": "radial_twist",
        "params": {"profile": "quadratic", "amplitude": 3.141592653589793},
        "manifold": "r2n1",
        "n": 1,
        "K": 2,
        "resolution": 40,
        "newton_tol": 1e-9,
        "geom_tol": 0.1,
        "steps_per_unit": 2000,
        "report_path": "report.json",
        "actions_path": "actions.csv"
    }

Only ``family`` and ``K`` are required. Errors name the file, the field and
the reason. ``workers`` defaults to the CONTACTLAB_WORKERS environment
variable; cached results go to ``cache_dir`` or CONTACTLAB_CACHE_DIR.

.. autoclass:: ExperimentConfig
    :members:

"""

import json
import logging
import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Optional, Tuple

from contactlab.constants import (
    DEFAULT_GEOM_TOL,
    DEFAULT_NEWTON_TOL,
    DEFAULT_RANK_TOL,
    DEFAULT_STEPS_PER_UNIT,
    INTEGER_TOL,
    MANIFOLD_R2N_S1,
    MANIFOLDS,
    TRIVIAL_ACTION_TOL,
)
from contactlab.core.integrator import IntegratorSettings
from contactlab.exceptions import ConfigError, ContactLabError, UnknownFamilyError
from contactlab.maps.catalog import FAMILIES, make_family, make_hamiltonian, resolve_params
from contactlab.maps.contactomorphism import ContactMap
from contactlab.translated.census import ON_ERROR_RECORD, CensusSettings
from contactlab.translated.newton import NewtonSettings
from contactlab.translated.points import SearchSettings, SeedStrategy
from contactlab.utils import config_digest

logger = logging.getLogger(__name__)

IN_MEMORY = "<dict>"
WORKERS_ENV = "CONTACTLAB_WORKERS"


def _default_workers() -> int:
    value = os.environ.get(WORKERS_ENV, "1")
    try:
        workers = int(value)
    except ValueError:
        raise ConfigError(WORKERS_ENV, "workers", f"not an integer: {value!r}") from None
    return max(1, workers)


@dataclass(frozen=True)
class ExperimentConfig:
    """Configuration of a census or graph-check run."""

    family: str
    K: int
    params: Dict[str, Any] = field(default_factory=dict)
    manifold: str = "r2n1"
    n: int = 1
    resolution: int = 20
    newton_tol: float = DEFAULT_NEWTON_TOL
    geom_tol: float = DEFAULT_GEOM_TOL
    steps_per_unit: int = DEFAULT_STEPS_PER_UNIT
    report_path: str = "contactlab_report.json"
    actions_path: str = "contactlab_actions.csv"
    graph_report_path: str = "contactlab_graph_check.json"
    z_range: Tuple[float, float] = (0.0, 1.0)
    z_resolution: Optional[int] = None
    seed: int = 0
    workers: int = field(default_factory=_default_workers)
    richardson_check: bool = False
    rank_tol: float = DEFAULT_RANK_TOL
    trivial_action_tol: float = TRIVIAL_ACTION_TOL
    integer_tol: float = INTEGER_TOL
    cache: bool = False
    cache_dir: Optional[str] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: str = IN_MEMORY) -> "ExperimentConfig":
        """Parse and validate a configuration dictionary.

        :raises ConfigError: naming ``path``, the offending field and the reason
        """
        if not isinstance(data, dict):
            raise ConfigError(path, "<root>", "configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        for name in sorted(data):
            if name not in known:
                raise ConfigError(path, name, "unknown field")
        for name in ("family", "K"):
            if name not in data:
                raise ConfigError(path, name, "missing required field")

        values = dict(data)
        if "z_range" in values:
            values["z_range"] = _pair(path, values["z_range"])
        params = values.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(path, "params", "must be an object")
        values["params"] = dict(params)

        try:
            config = cls(**values)
        except TypeError as exception:
            raise ConfigError(path, "<root>", str(exception)) from None
        config.validate(path)
        return config

    def validate(self, path: str = IN_MEMORY):
        """Validate field values and the family against the catalog."""
        _check_int(path, "K", self.K, 1)
        _check_int(path, "n", self.n, 1)
        _check_int(path, "resolution", self.resolution, 2)
        _check_int(path, "steps_per_unit", self.steps_per_unit, 1)
        _check_int(path, "seed", self.seed, 0)
        _check_int(path, "workers", self.workers, 1)
        if self.z_resolution is not None:
            _check_int(path, "z_resolution", self.z_resolution, 1)
        for name in ("newton_tol", "geom_tol", "rank_tol", "trivial_action_tol", "integer_tol"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                raise ConfigError(path, name, f"must be a positive number, got {value!r}")
        for name in ("richardson_check", "cache"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(path, name, "must be true or false")
        if self.manifold not in MANIFOLDS:
            raise ConfigError(
                path, "manifold", f"must be one of {', '.join(MANIFOLDS)}, got {self.manifold!r}"
            )
        if self.family not in FAMILIES:
            raise ConfigError(
                path,
                "family",
                f"unknown family {self.family!r}, expected one of {', '.join(sorted(FAMILIES))}",
            )
        if "n" in self.params and self.params["n"] != self.n:
            raise ConfigError(path, "params.n", f"disagrees with n={self.n}")

        try:
            hamiltonian = make_hamiltonian(self.family, self.family_params)
        except UnknownFamilyError as exception:
            raise ConfigError(path, "family", str(exception)) from None
        except ContactLabError as exception:
            raise ConfigError(path, "params", str(exception)) from None
        if self.manifold == MANIFOLD_R2N_S1 and not hamiltonian.z_periodic:
            raise ConfigError(
                path,
                "manifold",
                f"family {self.family!r} with these parameters is not 1-periodic in z",
            )

    @property
    def periodic_z(self) -> bool:
        """Return True on R^{2n} x S^1."""
        return self.manifold == MANIFOLD_R2N_S1

    @property
    def family_params(self) -> Dict[str, Any]:
        """Return family parameters including n."""
        return {**self.params, "n": self.n}

    def integrator_settings(self) -> IntegratorSettings:
        """Return integrator settings."""
        return IntegratorSettings(
            steps_per_unit=self.steps_per_unit, richardson_check=self.richardson_check
        )

    def build_map(self) -> ContactMap:
        """Return the configured map."""
        return make_family(
            self.family, self.family_params, self.periodic_z, self.integrator_settings()
        )

    def seed_strategy(self) -> SeedStrategy:
        """Return the seed strategy."""
        return SeedStrategy(
            resolution=self.resolution,
            z_resolution=self.z_resolution,
            z_range=tuple(self.z_range),
        )

    def search_settings(self, progress: bool = False) -> SearchSettings:
        """Return the per-k search settings."""
        return SearchSettings(
            newton=NewtonSettings(tol=self.newton_tol),
            geom_tol=self.geom_tol,
            rank_tol=self.rank_tol,
            trivial_action_tol=self.trivial_action_tol,
            workers=self.workers,
            progress=progress,
        )

    def census_settings(self, progress: bool = False) -> CensusSettings:
        """Return census settings; per-k failures are recorded, not raised."""
        return CensusSettings(
            search=self.search_settings(progress),
            seeds=self.seed_strategy(),
            integer_tol=self.integer_tol,
            on_error=ON_ERROR_RECORD,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Return a JSON friendly dictionary of all fields."""
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["params"] = resolve_params(self.family, self.family_params)
        data["z_range"] = list(self.z_range)
        return data

    def digest(self) -> str:
        """Return a digest of every field that influences results."""
        data = self.to_dict()
        for name in (
            "report_path",
            "actions_path",
            "graph_report_path",
            "workers",
            "cache",
            "cache_dir",
        ):
            data.pop(name)
        return config_digest(data)


def _check_int(path, name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(path, name, f"must be an integer >= {minimum}, got {value!r}")


def _pair(path, value):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
        or not value[0] <= value[1]
    ):
        raise ConfigError(path, "z_range", f"must be [low, high] with low <= high, got {value!r}")
    return (float(value[0]), float(value[1]))


def load_config(path: str) -> ExperimentConfig:
    """Load a configuration file.

    :raises ConfigError: on unreadable files, invalid JSON or invalid fields
    """
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exception:
        raise ConfigError(path, "<file>", exception.strerror or str(exception)) from None
    except json.JSONDecodeError as exception:
        raise ConfigError(
            path, "<json>", f"{exception.msg} at line {exception.lineno}"
        ) from None
    config = ExperimentConfig.from_dict(data, path)
    logger.debug("Loaded configuration %s (digest %s)", path, config.digest()[:12])
    return config


def dump_config(config: ExperimentConfig, path: str):
    """Write a configuration file that :func:`load_config` reads back."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(config.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
