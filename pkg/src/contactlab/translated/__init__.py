""".. Ignore pydocstyle D400.

=================
Translated points
=================

Residuals, the damped Newton solver, clustering, the per-k finder and the
iterated census.

"""

from .census import CensusReport, CensusSettings, iterated_census
from .clustering import Cluster, cluster, cluster_labels, dedupe
from .finder import (
    LemmaReport,
    action_of,
    check_iteration_lemma,
    find_translated_points,
    search_translated_points,
    seed_grid,
)
from .newton import NewtonResult, NewtonSettings, damped_newton, multistart_newton
from .points import SearchResult, SearchSettings, SeedStrategy, TranslatedPoint
from .residual import residual, residual_batch, residual_jacobian

__all__ = (
    "action_of",
    "CensusReport",
    "CensusSettings",
    "check_iteration_lemma",
    "Cluster",
    "cluster",
    "cluster_labels",
    "damped_newton",
    "dedupe",
    "find_translated_points",
    "iterated_census",
    "LemmaReport",
    "multistart_newton",
    "NewtonResult",
    "NewtonSettings",
    "residual",
    "residual_batch",
    "residual_jacobian",
    "search_translated_points",
    "SearchResult",
    "SearchSettings",
    "seed_grid",
    "SeedStrategy",
    "TranslatedPoint",
)
