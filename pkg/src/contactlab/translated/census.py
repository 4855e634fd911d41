""".. Ignore pydocstyle D400.

======
Census
======

Translated points of phi, phi^2, ..., phi^K, clustered across iterates.

.. autoclass:: CensusSettings
    :members:

.. autoclass:: CensusReport
    :members:

.. autofunction:: iterated_census

"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from contactlab.constants import INTEGER_TOL
from contactlab.contactlab_logger import log_context
from contactlab.core.geometry import ContactPoint
from contactlab.exceptions import (
    ContactLabError,
    PreconditionError,
    ValidationError,
)
from contactlab.maps.contactomorphism import ContactMap, evaluate, evaluate_batch, iterate
from contactlab.translated.clustering import Cluster, cluster
from contactlab.translated.finder import (
    LemmaReport,
    check_iteration_lemma,
    reverify,
    search_translated_points,
)
from contactlab.translated.points import (
    SearchResult,
    SearchSettings,
    SeedStrategy,
    TranslatedPoint,
)
from contactlab.utils.cache import cache_file, load_pickle, save_pickle
from contactlab.utils.decorators import positive_int

logger = logging.getLogger(__name__)

ON_ERROR_RAISE = "raise"
ON_ERROR_RECORD = "record"


@dataclass(frozen=True)
class CensusSettings:
    """Settings of an iterated census.

    :param search: settings of each per-k search
    :param seeds: seed strategy of each per-k search
    :param orbit_seeds: also seed from earlier solutions and their images
    :param integer_tol: tolerance of integer action coincidences and of
        periodic point detection
    :param lemma_checks: check the iteration lemma on shared clusters
    :param on_error: ``"raise"`` or ``"record"`` integration failures per k
    """

    search: SearchSettings = field(default_factory=SearchSettings)
    seeds: SeedStrategy = field(default_factory=SeedStrategy)
    orbit_seeds: bool = True
    integer_tol: float = INTEGER_TOL
    lemma_checks: bool = True
    on_error: str = ON_ERROR_RAISE

    def __post_init__(self):
        """Validate settings."""
        if self.on_error not in (ON_ERROR_RAISE, ON_ERROR_RECORD):
            raise ValidationError(f"on_error must be 'raise' or 'record', got {self.on_error!r}.")
        if not self.integer_tol > 0:
            raise ValidationError(f"integer_tol must be positive, got {self.integer_tol!r}.")


@dataclass(frozen=True)
class PeriodicPoint:
    """A point q with phi^k(q) = q geometrically and g_k(q) = 0."""

    orbit_id: int
    k: int
    point: ContactPoint
    distance: float
    g: float

    def to_dict(self) -> Dict:
        """Return a JSON friendly dictionary."""
        return {
            "orbit_id": self.orbit_id,
            "k": self.k,
            "point": self.point.as_array().tolist(),
            "distance": self.distance,
            "g": self.g,
        }


@dataclass(frozen=True)
class IntegerCoincidence:
    """Two iterates of one cluster whose actions differ by an integer."""

    orbit_id: int
    k1: int
    k2: int
    difference: float

    def to_dict(self) -> Dict:
        """Return a JSON friendly dictionary."""
        return {
            "orbit_id": self.orbit_id,
            "k1": self.k1,
            "k2": self.k2,
            "difference": self.difference,
        }


@dataclass
class CensusReport:
    """Result of :func:`iterated_census`."""

    K: int
    periodic_z: bool
    per_k: Dict[int, SearchResult]
    clusters: List[Cluster]
    periodic_points: List[PeriodicPoint]
    integer_coincidences: List[IntegerCoincidence]
    lemma_checks: List[LemmaReport]
    lemma_skipped: int
    errors: Dict[int, str]
    flags: Dict[str, bool]
    integer_tol: float = INTEGER_TOL

    def points(self, k: int) -> List[TranslatedPoint]:
        """Return the representatives of iterate k."""
        return self.per_k[k].points if k in self.per_k else []

    @property
    def total_count(self) -> int:
        """Return the number of per-k representatives."""
        return sum(len(result.points) for result in self.per_k.values())

    @property
    def distinct_count(self) -> int:
        """Return the number of clusters across all iterates."""
        return len(self.clusters)

    def cumulative_distinct(self) -> Dict[int, int]:
        """Return, per k, the number of clusters seen in iterates 1..k."""
        return {
            k: sum(1 for c in self.clusters if min(c.ks) <= k)
            for k in range(1, self.K + 1)
        }

    def action_table(self) -> Dict[int, List[float]]:
        """Return k -> sorted actions of the representatives."""
        return {k: result.actions for k, result in sorted(self.per_k.items())}

    def max_actions(self) -> Dict[int, Optional[float]]:
        """Return k -> maximum found action (None when nothing was found)."""
        return {
            k: (max(result.actions) if result.actions else None)
            for k, result in sorted(self.per_k.items())
        }

    def integer_envelope(self) -> Dict[int, Dict[str, float]]:
        """Return per k the integer hull of the found spectrum.

        ``ceil`` of the largest and ``floor`` of the smallest action and the
        width between them. Actions within ``integer_tol`` of an
        integer count as that integer.
        """
        envelope = {}
        for k, result in sorted(self.per_k.items()):
            if not result.actions:
                continue
            top = math.ceil(max(result.actions) - self.integer_tol)
            bottom = math.floor(min(result.actions) + self.integer_tol)
            envelope[k] = {"ceil_max": top, "floor_min": bottom, "width": top - bottom}
        return envelope

    def reverify(self, m: ContactMap, tol: float) -> List[str]:
        """Recompute residual and action of every representative; return failures."""
        failures = []
        for result in self.per_k.values():
            for point in result.points:
                failures.extend(reverify(m, point, tol))
        return failures


def _orbit_seeds(m: ContactMap, found: List[TranslatedPoint], z0: float = 0.0) -> np.ndarray:
    """Return earlier solutions and their images under phi.

    A z independent map commutes with the Reeb flow, so a translated point
    and its Reeb translates form one orbit. Their seeds are moved back to
    the level z = z0 of the grid.
    """
    if not found:
        return np.empty((0, m.dim))
    points = np.stack([p.point.as_array() for p in found])
    images = evaluate_batch(m, points, variational=False).images
    seeds = np.vstack([points, images])
    if m.z_independent:
        seeds[:, -1] = z0
    return seeds


def _periodic_points(
    m: ContactMap, clusters: List[Cluster], tol: float, g_tol: float
) -> List[PeriodicPoint]:
    found = []
    for c in clusters:
        for k in c.ks:
            q = c.representative_for(k).point
            evaluation = evaluate(iterate(m, k), q)
            distance = q.distance(evaluation.image)
            if distance <= tol and abs(evaluation.g) <= g_tol:
                found.append(PeriodicPoint(c.orbit_id, k, q, distance, evaluation.g))
    return found


def _integer_coincidences(clusters: List[Cluster], tol: float) -> List[IntegerCoincidence]:
    found = []
    for c in clusters:
        actions = {k: c.representative_for(k).action for k in c.ks}
        for k1 in c.ks:
            for k2 in c.ks:
                if k2 <= k1:
                    continue
                difference = actions[k2] - actions[k1]
                if abs(difference - round(difference)) <= tol:
                    found.append(IntegerCoincidence(c.orbit_id, k1, k2, difference))
    return found


def _mean_action_rigid(clusters: List[Cluster], tol: float) -> bool:
    """Return True when a_k / k agrees across iterates of every shared cluster."""
    shared = [c for c in clusters if len(c.ks) > 1]
    if not shared:
        return False
    for c in shared:
        means = [c.representative_for(k).action / k for k in c.ks]
        if max(means) - min(means) > tol:
            return False
    return True


def _lemma_checks(m: ContactMap, clusters: List[Cluster], tol: float):
    reports, skipped = [], 0
    for c in clusters:
        for k1 in c.ks:
            for k2 in c.ks:
                if k2 <= k1:
                    continue
                candidates = [c.representative_for(k1).point, c.representative_for(k2).point]
                for q in candidates:
                    try:
                        reports.append(check_iteration_lemma(m, q, k1, k2, tol))
                        break
                    except PreconditionError as exception:
                        logger.debug("Lemma check skipped on %r: %s", q, exception)
                else:
                    skipped += 1
    return reports, skipped


@positive_int("K")
def iterated_census(
    m: ContactMap,
    K: int,
    cfg: Optional[CensusSettings] = None,
    progress_callable=None,
    cache_key: Optional[str] = None,
    cache_dir: Optional[str] = None,
) -> CensusReport:
    """Find translated points of phi^k for k = 1..K and relate them.

    Clusters are formed across all iterates from all non-trivial solutions.
    With a ``cache_key`` (a digest of everything the run depends on) per-k
    search results are pickled to and reused from ``cache_dir``.

    Reported flags:

    * ``monotone_max_action``: the per-k maximum action strictly increases
    * ``integer_action_coincidence``: on R^{2n} x S^1, two iterates of one
      cluster have actions differing by an integer
    * ``has_periodic_points``: some phi^k fixes a cluster point with g_k = 0
    * ``identity_like``: every search converged everywhere to trivial points
    * ``mean_action_rigid``: action / k agrees across iterates of every
      shared cluster
    * ``distinct_growing``: the cumulative cluster count grows with k
    * ``iteration_lemma_closed``: every lemma check passed
    """
    cfg = cfg or CensusSettings()
    per_k: Dict[int, SearchResult] = {}
    errors: Dict[int, str] = {}
    found: List[TranslatedPoint] = []

    for k in range(1, K + 1):
        path = cache_file(cache_dir, cache_key, k) if cache_key else None
        try:
            with log_context(k=k):
                result = load_pickle(path) if path else None
                if result is None:
                    seeds = cfg.seeds
                    if cfg.orbit_seeds and found:
                        seeds = seeds.with_explicit(_orbit_seeds(m, found, seeds.z_range[0]))
                    result = search_translated_points(
                        m, k, seeds, cfg.search, progress_callable=progress_callable
                    )
                    if path:
                        save_pickle(result, path, override=True)
        except ContactLabError as exception:
            if cfg.on_error == ON_ERROR_RAISE:
                raise
            logger.error("Search for k=%d failed: %s", k, exception)
            errors[k] = f"{exception.__class__.__name__}: {exception}"
            continue
        per_k[k] = result
        found.extend(result.points)

    members = [p for result in per_k.values() for p in result.members]
    clusters = cluster(members, cfg.search.geom_tol)
    newton_tol = cfg.search.newton.tol

    periodic = _periodic_points(m, clusters, cfg.integer_tol, 10 * newton_tol)
    coincidences = (
        _integer_coincidences(clusters, cfg.integer_tol) if m.periodic_z else []
    )
    lemma_reports, skipped = (
        _lemma_checks(m, clusters, newton_tol) if cfg.lemma_checks else ([], 0)
    )

    report = CensusReport(
        K=K,
        periodic_z=m.periodic_z,
        per_k=per_k,
        clusters=clusters,
        periodic_points=periodic,
        integer_coincidences=coincidences,
        lemma_checks=lemma_reports,
        lemma_skipped=skipped,
        errors=errors,
        flags={},
        integer_tol=cfg.integer_tol,
    )

    maxima = [report.max_actions().get(k) for k in range(1, K + 1)]
    cumulative = list(report.cumulative_distinct().values())
    report.flags.update(
        {
            "monotone_max_action": all(a is not None for a in maxima)
            and all(b > a for a, b in zip(maxima, maxima[1:])),
            "integer_action_coincidence": bool(coincidences),
            "has_periodic_points": bool(periodic),
            "identity_like": bool(per_k)
            and all(result.identity_like for result in per_k.values()),
            "mean_action_rigid": _mean_action_rigid(clusters, cfg.integer_tol),
            "distinct_growing": K > 1
            and all(b >= a for a, b in zip(cumulative, cumulative[1:]))
            and cumulative[-1] > cumulative[0],
            "iteration_lemma_closed": all(r.passed for r in lemma_reports),
        }
    )
    logger.info(
        "Census of %s up to K=%d: %d clusters, %d periodic points, flags %s.",
        m.name,
        K,
        len(clusters),
        len(periodic),
        report.flags,
    )
    return report
