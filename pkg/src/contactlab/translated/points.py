"""Result types of the translated-point search."""

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from contactlab.constants import (
    DEFAULT_GEOM_TOL,
    DEFAULT_RANK_TOL,
    SEED_CHUNK_SIZE,
    TRIVIAL_ACTION_TOL,
)
from contactlab.core.geometry import ContactPoint
from contactlab.exceptions import ValidationError
from contactlab.translated.newton import NewtonSettings

NONE_FOUND = "none found"
ONLY_TRIVIAL = "only trivial solutions found"


@dataclass(frozen=True)
class TranslatedPoint:
    """A translated point q of phi^k.

    :param point: the source point q
    :param k: iterate
    :param action: z(phi^k(q)) - z(q) with z as real lift
    :param residual_norm: norm of the translated-point residual at q
    :param nondegenerate: the residual Jacobian has full rank
    :param orbit_id: cluster label, None until clustered
    :param smallest_singular_value: of the residual Jacobian
    :param g: conformal factor g_k(q)
    :param trivial: zero action or outside the open support
    :param cluster_size: members of the cluster this point represents
    :param continuum: the cluster is a continuum of solutions
    """

    point: ContactPoint
    k: int
    action: float
    residual_norm: float
    nondegenerate: bool
    orbit_id: Optional[int] = None
    smallest_singular_value: float = math.nan
    g: float = 0.0
    trivial: bool = False
    cluster_size: int = 1
    continuum: bool = False

    def with_cluster(self, orbit_id: int, size: int, continuum: bool) -> "TranslatedPoint":
        """Return a copy labelled with its cluster."""
        return replace(self, orbit_id=orbit_id, cluster_size=size, continuum=continuum)

    def to_dict(self) -> Dict:
        """Return a JSON friendly dictionary."""
        data = asdict(self)
        data["point"] = self.point.as_array().tolist()
        return data


@dataclass(frozen=True)
class SeedStrategy:
    """How seeds for the Newton solver are produced.

    :param resolution: grid points per planar axis over the support box
    :param z_resolution: grid points in z; defaults to ``resolution`` for
        z dependent maps and to 1 for z independent ones (whose solutions
        come in whole Reeb orbits)
    :param z_range: z interval covered by the grid
    :param explicit: additional explicit seeds, (M, 2n+1)
    :param grid: use the grid at all
    """

    resolution: int = 20
    z_resolution: Optional[int] = None
    z_range: Tuple[float, float] = (0.0, 1.0)
    explicit: Optional[np.ndarray] = None
    grid: bool = True

    def __post_init__(self):
        """Validate the strategy."""
        if self.grid and self.resolution < 2:
            raise ValidationError(f"Grid resolution must be >= 2, got {self.resolution}.")
        if self.z_resolution is not None and self.z_resolution < 1:
            raise ValidationError(f"z_resolution must be >= 1, got {self.z_resolution}.")
        if not self.z_range[0] <= self.z_range[1]:
            raise ValidationError(f"Invalid z_range {self.z_range}.")
        if not self.grid and self.explicit is None:
            raise ValidationError("A seed strategy needs a grid or explicit seeds.")

    def with_explicit(self, seeds: np.ndarray) -> "SeedStrategy":
        """Return the strategy with extra explicit seeds appended."""
        if self.explicit is not None and len(self.explicit):
            seeds = np.vstack([self.explicit, seeds])
        return replace(self, explicit=seeds)


@dataclass(frozen=True)
class SearchSettings:
    """Settings of a translated-point search."""

    newton: NewtonSettings = field(default_factory=NewtonSettings)
    geom_tol: float = DEFAULT_GEOM_TOL
    rank_tol: float = DEFAULT_RANK_TOL
    trivial_action_tol: float = TRIVIAL_ACTION_TOL
    workers: int = 1
    chunk_size: int = SEED_CHUNK_SIZE
    progress: bool = False

    def __post_init__(self):
        """Validate settings."""
        for name in ("geom_tol", "rank_tol", "trivial_action_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive, got {getattr(self, name)!r}.")
        if self.workers < 1 or self.chunk_size < 1:
            raise ValidationError("workers and chunk_size must be positive.")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of the search for translated points of phi^k.

    :param k: iterate
    :param points: one representative per non-trivial cluster
    :param members: all non-trivial solutions, labelled with their cluster
    :param trivial: solutions with zero action or outside the open support
    :param seeds_total: number of seeds
    :param converged: seeds converged inside the support closure
    :param diagnostic: ``"none found"`` etc. when no non-trivial point was
        found; a search can miss solutions, so this never means none exist
    """

    k: int
    points: List[TranslatedPoint]
    members: List[TranslatedPoint]
    trivial: List[TranslatedPoint]
    seeds_total: int
    converged: int
    diagnostic: Optional[str] = None

    @property
    def identity_like(self) -> bool:
        """Every seed converged and every solution is trivial."""
        return (
            self.seeds_total > 0
            and self.converged == self.seeds_total
            and not self.points
        )

    @property
    def actions(self) -> List[float]:
        """Return sorted actions of the non-trivial representatives."""
        return sorted(point.action for point in self.points)

    @property
    def spectrum(self) -> List[float]:
        """Return the sorted found spectrum, 0 included when trivial points exist."""
        values = self.actions
        if self.trivial:
            values = sorted(values + [0.0])
        return values
