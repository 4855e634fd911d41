""".. Ignore pydocstyle D400.

=======================
Translated point finder
=======================

Multistart damped Newton on the translated-point residual of phi^k.

.. autofunction:: seed_grid

.. autofunction:: search_translated_points

.. autofunction:: find_translated_points

.. autofunction:: action_of

.. autofunction:: check_iteration_lemma

"""

import logging
from dataclasses import asdict, dataclass, replace
from typing import Dict, List, Optional, Union

import numpy as np

from contactlab.constants import DEFAULT_NEWTON_TOL
from contactlab.core.geometry import ContactPoint, as_batch
from contactlab.exceptions import PreconditionError, ValidationError
from contactlab.maps.contactomorphism import ContactMap, evaluate, iterate
from contactlab.translated.clustering import cluster
from contactlab.translated.newton import multistart_newton
from contactlab.translated.points import (
    NONE_FOUND,
    ONLY_TRIVIAL,
    SearchResult,
    SearchSettings,
    SeedStrategy,
    TranslatedPoint,
)
from contactlab.translated.residual import residual, residual_batch
from contactlab.utils.decorators import positive_int

logger = logging.getLogger(__name__)

# Planar distance below which a grid point counts as the support centre.
CENTRE_TOL = 1e-12


def seed_grid(m: ContactMap, seeds: SeedStrategy) -> np.ndarray:
    """Return the seed points of a strategy for map ``m``.

    The grid covers the planar support box, intersected with the open
    support for maps with bounded support. Such grids always contain the
    support centre (the planar origin) at every z level, also for even
    resolutions. On R^{2n} x S^1 the z grid omits the right end of
    ``z_range``.
    """
    parts = []
    if seeds.grid:
        low, high = m.bounding_box()
        axes = [np.linspace(lo, hi, seeds.resolution) for lo, hi in zip(low, high)]
        z_resolution = seeds.z_resolution
        if z_resolution is None:
            z_resolution = 1 if m.z_independent else seeds.resolution
        z0, z1 = seeds.z_range
        if z_resolution == 1:
            axes.append(np.array([z0]))
        else:
            axes.append(np.linspace(z0, z1, z_resolution, endpoint=not m.periodic_z))
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m.dim)
        if m.bounded_support:
            grid = grid[m.in_interior(grid)]
            if not np.any(np.all(np.abs(grid[:, :-1]) <= CENTRE_TOL, axis=1)):
                centres = np.zeros((axes[-1].size, m.dim))
                centres[:, -1] = axes[-1]
                grid = np.vstack([grid, centres])
        parts.append(grid)
    if seeds.explicit is not None and len(seeds.explicit):
        parts.append(as_batch(seeds.explicit))

    points = np.vstack(parts) if parts else np.empty((0, m.dim))
    if points.shape[1] != m.dim:
        raise ValidationError(f"Seeds must have dimension {m.dim}, got {points.shape[1]}.")
    return points


def _classify(
    mk: ContactMap, k: int, points: np.ndarray, settings: SearchSettings
) -> List[TranslatedPoint]:
    """Compute action, nondegeneracy and triviality of converged points."""
    if points.shape[0] == 0:
        return []
    batch = residual_batch(mk, points)
    norms = np.linalg.norm(batch.values, axis=1)
    actions = batch.evaluation.images[:, -1] - points[:, -1]
    smallest = np.linalg.svd(batch.jacobian, compute_uv=False)[:, -1]
    if mk.bounded_support:
        interior = mk.in_interior(points)
    else:
        interior = np.full(points.shape[0], not mk.is_identity)
    trivial = (np.abs(actions) <= settings.trivial_action_tol) | ~interior

    return [
        TranslatedPoint(
            point=ContactPoint.from_array(points[i], periodic_z=mk.periodic_z),
            k=k,
            action=float(actions[i]),
            residual_norm=float(norms[i]),
            nondegenerate=bool(smallest[i] > settings.rank_tol),
            smallest_singular_value=float(smallest[i]),
            g=float(batch.evaluation.g[i]),
            trivial=bool(trivial[i]),
        )
        for i in range(points.shape[0])
    ]


@positive_int("k")
def search_translated_points(
    m: ContactMap,
    k: int,
    seeds: Union[SeedStrategy, np.ndarray, None] = None,
    settings: Optional[SearchSettings] = None,
    progress_callable=None,
) -> SearchResult:
    """Search translated points of phi^k from a set of seeds.

    Converged solutions outside the closure of the support are discarded.
    Solutions with zero action or outside the open support are trivial and
    kept apart; the others are clustered.

    :param m: contact map phi
    :param k: iterate
    :param seeds: seed strategy or explicit (M, 2n+1) seeds
    :param settings: search settings
    :param progress_callable: receives progress fractions
    """
    settings = settings or SearchSettings()
    if seeds is None:
        seeds = SeedStrategy()
    elif not isinstance(seeds, SeedStrategy):
        seeds = SeedStrategy(explicit=as_batch(seeds), grid=False)
    mk = iterate(m, k)
    start = seed_grid(m, seeds)

    def fn(points, with_jacobian):
        batch = residual_batch(mk, points, with_jacobian)
        return batch.values, batch.jacobian

    result = multistart_newton(
        fn,
        start,
        settings.newton,
        workers=settings.workers,
        chunk_size=settings.chunk_size,
        desc=f"{m.name} k={k}",
        progress=settings.progress,
        progress_callable=progress_callable,
    )

    keep = result.converged
    if mk.bounded_support:
        keep &= mk.in_closure(result.points)
    solutions = _classify(mk, k, result.points[keep], settings)

    nontrivial = [p for p in solutions if not p.trivial]
    trivial = [p for p in solutions if p.trivial]
    clusters = cluster(nontrivial, settings.geom_tol)
    members = [p for c in clusters for p in c.members]
    representatives = [c.representative for c in clusters]

    diagnostic = None
    if not solutions:
        diagnostic = NONE_FOUND
        logger.warning(
            "%s k=%d: none found (%d seeds, no seed converged).", m.name, k, len(start)
        )
    elif not representatives:
        diagnostic = ONLY_TRIVIAL

    logger.info(
        "%s k=%d: %d seeds, %d converged, %d clusters, %d trivial.",
        m.name,
        k,
        len(start),
        len(solutions),
        len(representatives),
        len(trivial),
    )
    return SearchResult(
        k=k,
        points=representatives,
        members=members,
        trivial=trivial,
        seeds_total=len(start),
        converged=len(solutions),
        diagnostic=diagnostic,
    )


def find_translated_points(
    m: ContactMap,
    k: int,
    seeds: Union[SeedStrategy, np.ndarray, None] = None,
    tol: float = DEFAULT_NEWTON_TOL,
    settings: Optional[SearchSettings] = None,
) -> List[TranslatedPoint]:
    """Return deduplicated non-trivial translated points of phi^k.

    An empty list means none were found, not that none exist.
    """
    if not tol > 0:
        raise ValidationError(f"tol must be positive, got {tol!r}.")
    settings = settings or SearchSettings()
    settings = replace(settings, newton=replace(settings.newton, tol=tol))
    return search_translated_points(m, k, seeds, settings).points


@positive_int("k")
def action_of(
    m: ContactMap, k: int, q: ContactPoint, tol: float = 10 * DEFAULT_NEWTON_TOL
) -> float:
    """Return the contact action z(phi^k(q)) - z(q) of a translated point."""
    mk = iterate(m, k)
    batch = residual_batch(mk, q, with_jacobian=False)
    norm = float(np.linalg.norm(batch.values[0]))
    if norm > tol:
        raise PreconditionError(f"phi^{k}", norm, tol)
    return float(batch.evaluation.images[0, -1] - batch.evaluation.points[0, -1])


@dataclass(frozen=True)
class LemmaReport:
    """Check that phi^k1(q) is a translated point of phi^(k2-k1).

    Residual norms and conformal factors at q for phi^k1 and phi^k2 and at
    the derived point for phi^(k2-k1).
    """

    k1: int
    k2: int
    point: ContactPoint
    derived_point: ContactPoint
    residual_k1: float
    residual_k2: float
    residual_derived: float
    g_k1: float
    g_k2: float
    g_derived: float
    tol: float

    @property
    def cocycle_defect(self) -> float:
        """Return |g_k2(q) - g_(k2-k1)(phi^k1(q)) - g_k1(q)|."""
        return abs(self.g_k2 - self.g_derived - self.g_k1)

    @property
    def passed(self) -> bool:
        """Return True when the derived residual is within 10 tol."""
        return self.residual_derived <= 10 * self.tol

    def to_dict(self) -> Dict:
        """Return a JSON friendly dictionary."""
        data = asdict(self)
        data["point"] = self.point.as_array().tolist()
        data["derived_point"] = self.derived_point.as_array().tolist()
        data["cocycle_defect"] = self.cocycle_defect
        data["passed"] = self.passed
        return data


def check_iteration_lemma(
    m: ContactMap, q: ContactPoint, k1: int, k2: int, tol: float = DEFAULT_NEWTON_TOL
) -> LemmaReport:
    """Verify that a common translated point of phi^k1, phi^k2 moves to one of phi^(k2-k1).

    :raises PreconditionError: if q is not translated for phi^k1 or phi^k2
    """
    if not 1 <= k1 < k2:
        raise ValidationError(f"Need 1 <= k1 < k2, got k1={k1}, k2={k2}.")
    first = residual_batch(iterate(m, k1), q, with_jacobian=False)
    second = residual_batch(iterate(m, k2), q, with_jacobian=False)
    for k, batch in ((k1, first), (k2, second)):
        norm = float(np.linalg.norm(batch.values[0]))
        if norm > tol:
            raise PreconditionError(f"phi^{k}", norm, tol)

    derived = evaluate(iterate(m, k1), q).image
    derived_batch = residual_batch(iterate(m, k2 - k1), derived, with_jacobian=False)
    return LemmaReport(
        k1=k1,
        k2=k2,
        point=q,
        derived_point=derived,
        residual_k1=float(np.linalg.norm(first.values[0])),
        residual_k2=float(np.linalg.norm(second.values[0])),
        residual_derived=float(np.linalg.norm(derived_batch.values[0])),
        g_k1=float(first.evaluation.g[0]),
        g_k2=float(second.evaluation.g[0]),
        g_derived=float(derived_batch.evaluation.g[0]),
        tol=tol,
    )


def reverify(m: ContactMap, point: TranslatedPoint, tol: float) -> List[str]:
    """Recompute residual and action of a reported point; return failures."""
    failures = []
    values = residual(iterate(m, point.k), point.point)
    norm = float(np.linalg.norm(values))
    if norm > tol:
        failures.append(f"k={point.k} {point.point!r}: residual {norm:.3e} > {tol:.3e}")
    image = evaluate(iterate(m, point.k), point.point).image
    if abs(point.action - (image.z - point.point.z)) > 1e-12:
        failures.append(f"k={point.k} {point.point!r}: action does not re-verify")
    return failures
