"""Zero-wall cross-check of a census against the Legendrian graph.

Forward: every census point of phi^k has p = 0 and theta = action on the
graph of phi^k. Converse: Newton solves of p(gamma(phi^k, q)) = 0 from the
census seed grid find no non-trivial zero away from all census points.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import numpy as np

from contactlab.constants import DEFAULT_NEWTON_TOL
from contactlab.exceptions import ValidationError
from contactlab.graph.jet import gamma_from_evaluation, gamma_jacobian_from_evaluation
from contactlab.maps.contactomorphism import ContactMap, evaluate_batch, iterate
from contactlab.translated.census import CensusReport
from contactlab.translated.clustering import cluster_labels
from contactlab.translated.finder import seed_grid
from contactlab.translated.newton import multistart_newton
from contactlab.translated.points import SearchSettings, SeedStrategy

logger = logging.getLogger(__name__)


@dataclass
class ZeroWallReport:
    """Outcome of :func:`zero_wall_cross_check` for one iterate."""

    k: int
    tol: float
    points: List[Dict] = field(default_factory=list)
    zeros_found: int = 0
    discrepancies: List[List[float]] = field(default_factory=list)

    @property
    def max_p_norm(self) -> float:
        """Return the largest |p| at census points."""
        return max((point["p_norm"] for point in self.points), default=0.0)

    @property
    def max_theta_gap(self) -> float:
        """Return the largest |theta - action| at census points."""
        return max((point["theta_gap"] for point in self.points), default=0.0)

    @property
    def forward_passed(self) -> bool:
        """Return True when every census point lies on the zero wall."""
        bound = 10 * self.tol
        return self.max_p_norm <= bound and self.max_theta_gap <= bound

    @property
    def passed(self) -> bool:
        """Return True when both directions agree."""
        return self.forward_passed and not self.discrepancies

    def to_dict(self) -> Dict:
        """Return a JSON friendly dictionary."""
        return {
            "k": self.k,
            "passed": self.passed,
            "forward_passed": self.forward_passed,
            "max_p_norm": self.max_p_norm,
            "max_theta_gap": self.max_theta_gap,
            "zeros_found": self.zeros_found,
            "discrepancies": self.discrepancies,
            "points": self.points,
        }


def zero_wall_cross_check(
    m: ContactMap,
    k: int,
    census: CensusReport,
    tol: float = DEFAULT_NEWTON_TOL,
    seeds: Optional[SeedStrategy] = None,
    settings: Optional[SearchSettings] = None,
) -> ZeroWallReport:
    """Cross-check the census points of phi^k against the zero wall of its graph.

    A discrepancy is a non-trivial zero of p found by the converse search
    that is not geometrically close to any census point of phi^k. Failures
    are reported, not raised.

    :param m: contact map phi
    :param k: iterate
    :param census: census containing iterate ``k``
    :param tol: Newton tolerance of both channels
    :param seeds: census seed strategy (its grid is reused)
    :param settings: census search settings
    """
    if k not in census.per_k:
        raise ValidationError(f"Census has no results for k={k}.")
    settings = settings or SearchSettings()
    seeds = seeds or SeedStrategy()
    mk = iterate(m, k)
    report = ZeroWallReport(k=k, tol=tol)

    members = census.per_k[k].members
    if members:
        coords = np.stack([p.point.as_array() for p in members])
        jet = gamma_from_evaluation(evaluate_batch(mk, coords, variational=False))
        p_norm = np.linalg.norm(jet.p, axis=1)
        gap = np.abs(jet.theta - np.array([p.action for p in members]))
        for point, norm, diff in zip(members, p_norm, gap):
            report.points.append(
                {
                    "orbit_id": point.orbit_id,
                    "point": point.point.as_array().tolist(),
                    "p_norm": float(norm),
                    "theta_gap": float(diff),
                }
            )

    def fn(points, with_jacobian):
        evaluation = evaluate_batch(mk, points, variational=with_jacobian)
        p = gamma_from_evaluation(evaluation).p
        if not with_jacobian:
            return p, None
        dim = points.shape[1]
        return p, gamma_jacobian_from_evaluation(evaluation)[:, dim : 2 * dim, :]

    start = seed_grid(m, replace(seeds, explicit=None, grid=True))
    newton = replace(settings.newton, tol=tol)
    result = multistart_newton(
        fn,
        start,
        newton,
        workers=settings.workers,
        chunk_size=settings.chunk_size,
        desc=f"zero wall k={k}",
        progress=settings.progress,
    )
    keep = result.converged
    if mk.bounded_support:
        keep &= mk.in_interior(result.points)
    zeros = result.points[keep]
    if zeros.shape[0]:
        theta = gamma_from_evaluation(evaluate_batch(mk, zeros, variational=False)).theta
        zeros = zeros[np.abs(theta) > settings.trivial_action_tol]
    if mk.is_identity:
        zeros = zeros[:0]
    report.zeros_found = int(zeros.shape[0])

    if zeros.shape[0]:
        census_coords = (
            np.stack([p.point.as_array() for p in members])
            if members
            else np.empty((0, m.dim))
        )
        labels = cluster_labels(
            np.vstack([zeros, census_coords]), settings.geom_tol, m.periodic_z
        )
        covered = set(labels[zeros.shape[0] :].tolist())
        lonely = [i for i in range(zeros.shape[0]) if labels[i] not in covered]
        seen = set()
        for i in lonely:
            if labels[i] not in seen:
                seen.add(labels[i])
                report.discrepancies.append(zeros[i].tolist())

    if not report.passed:
        logger.warning(
            "Zero-wall cross-check of %s k=%d failed: max |p| %.3e, max theta gap %.3e, "
            "%d discrepancies.",
            m.name,
            k,
            report.max_p_norm,
            report.max_theta_gap,
            len(report.discrepancies),
        )
    return report
