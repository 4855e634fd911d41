"""Single-linkage clustering of translated points.

Points are linked when max(|dx|, |dy|, dist_z(dz)) <= geom_tol, with dist_z
taken modulo 1 on R^{2n} x S^1. Clusters are the connected components of
the link graph.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import KDTree

from contactlab.constants import CONTINUUM_MIN_MEMBERS
from contactlab.exceptions import ValidationError
from contactlab.translated.points import TranslatedPoint

logger = logging.getLogger(__name__)

# Rounding used for the canonical order of points.
CANONICAL_DECIMALS = 9


def cluster_labels(points: np.ndarray, geom_tol: float, periodic_z: bool) -> np.ndarray:
    """Return single-linkage cluster labels of an (M, 2n+1) array.

    Labels are numbered by first appearance in ``points``.
    """
    if not geom_tol > 0:
        raise ValidationError(f"geom_tol must be positive, got {geom_tol!r}.")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    count = points.shape[0]
    if count == 0:
        return np.empty(0, dtype=int)

    data = points.copy()
    boxsize = None
    if periodic_z:
        data[:, -1] = np.mod(data[:, -1], 1.0)
        data[data[:, -1] >= 1.0, -1] = 0.0
        # Only z wraps; the planar box is made too large to wrap.
        data[:, :-1] -= data[:, :-1].min(axis=0)
        span = data[:, :-1].max(initial=0.0) + 4.0 * geom_tol + 1.0
        boxsize = np.full(data.shape[1], span)
        boxsize[-1] = 1.0

    tree = KDTree(data, boxsize=boxsize)
    pairs = tree.query_pairs(r=geom_tol, p=np.inf, output_type="ndarray")
    graph = coo_matrix(
        (np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(count, count)
    )
    _, labels = connected_components(graph, directed=False)

    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    return relabel[labels]


def canonical_order(points: Sequence[TranslatedPoint]) -> List[TranslatedPoint]:
    """Sort points by (k, rounded coordinates, residual) for deterministic output."""
    if not points:
        return []
    coords = np.round(np.stack([p.point.as_array() for p in points]), CANONICAL_DECIMALS)
    keys = [np.array([p.residual_norm for p in points])]
    keys += [coords[:, i] for i in reversed(range(coords.shape[1]))]
    keys.append(np.array([p.k for p in points]))
    return [points[i] for i in np.lexsort(keys)]


@dataclass(frozen=True)
class Cluster:
    """A cluster of geometrically equal translated points, possibly of several k."""

    orbit_id: int
    members: Tuple[TranslatedPoint, ...]

    @property
    def representative(self) -> TranslatedPoint:
        """Return the member with the smallest residual."""
        return min(self.members, key=lambda p: p.residual_norm)

    @property
    def ks(self) -> List[int]:
        """Return the iterates present in the cluster."""
        return sorted({p.k for p in self.members})

    @property
    def continuum(self) -> bool:
        """Return True when the cluster chains more than the continuum threshold."""
        return len(self.members) > CONTINUUM_MIN_MEMBERS

    def members_for(self, k: int) -> List[TranslatedPoint]:
        """Return members of iterate k."""
        return [p for p in self.members if p.k == k]

    def representative_for(self, k: int) -> TranslatedPoint:
        """Return the member of iterate k with the smallest residual."""
        return min(self.members_for(k), key=lambda p: p.residual_norm)

    def counts(self) -> Dict[int, int]:
        """Return member counts per k."""
        return {k: len(self.members_for(k)) for k in self.ks}


def cluster(points: Sequence[TranslatedPoint], geom_tol: float) -> List[Cluster]:
    """Cluster translated points; members are relabelled with their orbit id."""
    ordered = canonical_order(points)
    if not ordered:
        return []
    periodic_z = ordered[0].point.periodic_z
    labels = cluster_labels(
        np.stack([p.point.as_array() for p in ordered]), geom_tol, periodic_z
    )
    grouped: Dict[int, List[TranslatedPoint]] = {}
    for point, label in zip(ordered, labels):
        grouped.setdefault(int(label), []).append(point)

    clusters = []
    for label in sorted(grouped):
        members = grouped[label]
        continuum = len(members) > CONTINUUM_MIN_MEMBERS
        clusters.append(
            Cluster(
                label,
                tuple(p.with_cluster(label, len(members), continuum) for p in members),
            )
        )
    logger.debug("Clustered %d points into %d clusters", len(ordered), len(clusters))
    return clusters


def dedupe(points: Sequence[TranslatedPoint], geom_tol: float) -> List[TranslatedPoint]:
    """Return one representative per cluster (smallest residual), with orbit_id set."""
    return [c.representative for c in cluster(points, geom_tol)]
