""".. Ignore pydocstyle D400.

======
Runner
======

Orchestration of the ``census`` and ``graph-check`` commands. Both build
the configured map, run the solvers and write their artifacts at the end of
the run. Solver failures are recorded per iterate and reported; they never
abort the remaining iterates.

.. autofunction:: run_census

.. autofunction:: run_graph_check

"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import wrapt

from contactlab.contactlab_logger import log_context
from contactlab.exceptions import ContactLabError
from contactlab.experiments.config import ExperimentConfig
from contactlab.experiments.tables import CensusTables
from contactlab.graph import (
    ZeroWallReport,
    gamma_batch,
    gamma_jacobian_batch,
    legendrian_residual_batch,
    sample_grid,
    zero_wall_cross_check,
)
from contactlab.maps.contactomorphism import ContactMap, iterate
from contactlab.translated.census import CensusReport, iterated_census
from contactlab.utils import md5

logger = logging.getLogger(__name__)

LEGENDRIAN_BOUND = 1e-6
JACOBIAN_BOUND = 1e-5
GRAPH_GRID_RESOLUTION = 5
FD_SAMPLES = 20
FD_STEP = 1e-5
# Digest characters identifying a run in log records.
RUN_ID_LENGTH = 8


@dataclass
class CensusRun:
    """Outcome of :func:`run_census`."""

    census: CensusReport
    zero_wall: Dict[int, ZeroWallReport]
    document: Dict[str, Any]
    passed: bool
    files: Dict[str, str] = field(default_factory=dict)


@dataclass
class GraphCheckRun:
    """Outcome of :func:`run_graph_check`."""

    k: int
    document: Dict[str, Any]
    passed: bool
    files: Dict[str, str] = field(default_factory=dict)


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {value.__class__.__name__} is not JSON serializable")


def write_json(document: Dict[str, Any], path: str):
    """Write ``document`` with sorted keys so repeated runs are byte identical."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True, default=_json_default)
        handle.write("\n")
    logger.info("Wrote %s (md5 %s)", path, md5(path))


def _census(cfg: ExperimentConfig, m: ContactMap, K: int, progress: bool) -> CensusReport:
    return iterated_census(
        m,
        K,
        cfg.census_settings(progress),
        cache_key=cfg.digest() if cfg.cache else None,
        cache_dir=cfg.cache_dir,
    )


def _zero_wall(cfg, m, census, k, errors) -> Optional[ZeroWallReport]:
    try:
        return zero_wall_cross_check(
            m,
            k,
            census,
            tol=cfg.newton_tol,
            seeds=cfg.seed_strategy(),
            settings=cfg.search_settings(),
        )
    except ContactLabError as exception:
        logger.error("Zero-wall cross-check for k=%d failed: %s", k, exception)
        errors.setdefault(str(k), []).append(
            f"zero wall: {exception.__class__.__name__}: {exception}"
        )
        return None


def census_document(
    cfg: ExperimentConfig,
    census: CensusReport,
    zero_wall: Dict[int, ZeroWallReport],
    errors: Dict[str, List[str]],
    reverify_failures: List[str],
) -> Dict[str, Any]:
    """Return the JSON report of a census run."""
    envelope = census.integer_envelope() if census.periodic_z else {}
    per_k = {}
    for k, result in sorted(census.per_k.items()):
        wall = zero_wall.get(k)
        per_k[str(k)] = {
            "seeds_total": result.seeds_total,
            "converged": result.converged,
            "diagnostic": result.diagnostic,
            "identity_like": result.identity_like,
            "actions": result.actions,
            "spectrum": result.spectrum,
            "trivial_count": len(result.trivial),
            "member_count": len(result.members),
            "points": [point.to_dict() for point in result.points],
            "integer_envelope": envelope.get(k),
            "zero_wall": wall.to_dict() if wall else None,
        }

    periodic = {p.orbit_id for p in census.periodic_points}
    clusters = [
        {
            "orbit_id": c.orbit_id,
            "ks": c.ks,
            "counts": {str(k): count for k, count in c.counts().items()},
            "continuum": c.continuum,
            "periodic": c.orbit_id in periodic,
            "representative": c.representative.point.as_array().tolist(),
            "actions": {str(k): c.representative_for(k).action for k in c.ks},
        }
        for c in census.clusters
    ]
    flags = dict(census.flags)
    flags["zero_wall_passed"] = all(
        k in zero_wall and zero_wall[k].passed for k in census.per_k
    )
    flags["reverified"] = not reverify_failures

    return {
        "config_echo": cfg.to_dict(),
        "per_k": per_k,
        "distinct_clusters": {
            "count": census.distinct_count,
            "cumulative": {str(k): v for k, v in census.cumulative_distinct().items()},
            "clusters": clusters,
            "integer_coincidences": [c.to_dict() for c in census.integer_coincidences],
            "iteration_lemma": {
                "checks": [r.to_dict() for r in census.lemma_checks],
                "skipped": census.lemma_skipped,
            },
        },
        "periodic_points": [p.to_dict() for p in census.periodic_points],
        "flags": flags,
        "errors": {**errors, "reverify": reverify_failures} if reverify_failures else errors,
    }


@wrapt.decorator
def _in_run_context(wrapped, instance, args, kwargs):
    """Run ``wrapped(cfg, ...)`` with log records stamped by the config digest."""
    cfg = args[0] if args else kwargs["cfg"]
    with log_context(run=cfg.digest()[:RUN_ID_LENGTH]):
        return wrapped(*args, **kwargs)


@_in_run_context
def run_census(cfg: ExperimentConfig, progress: bool = False, write: bool = True) -> CensusRun:
    """Run the iterated census and the zero-wall cross-check of every iterate.

    Writes the JSON report to ``cfg.report_path`` and the action table to
    ``cfg.actions_path``. The run passes when no iterate failed, every
    cross-check and iteration lemma check passed and every reported point
    re-verifies.
    """
    m = cfg.build_map()
    logger.info("Census of %r up to K=%d", m, cfg.K)
    census = _census(cfg, m, cfg.K, progress)

    errors: Dict[str, List[str]] = {str(k): [msg] for k, msg in census.errors.items()}
    zero_wall = {}
    for k in sorted(census.per_k):
        with log_context(k=k):
            wall = _zero_wall(cfg, m, census, k, errors)
        if wall is not None:
            zero_wall[k] = wall
    reverify_failures = census.reverify(m, cfg.newton_tol)
    for failure in reverify_failures:
        logger.warning("Re-verification failed: %s", failure)

    document = census_document(cfg, census, zero_wall, errors, reverify_failures)
    passed = (
        not document["errors"]
        and document["flags"]["zero_wall_passed"]
        and census.flags["iteration_lemma_closed"]
    )
    run = CensusRun(census, zero_wall, document, bool(passed))

    if write:
        write_json(document, cfg.report_path)
        CensusTables(census).to_csv(cfg.actions_path)
        logger.info("Wrote %s (md5 %s)", cfg.actions_path, md5(cfg.actions_path))
        run.files = {"report": cfg.report_path, "actions": cfg.actions_path}

    logger.info("Census %s", "passed" if run.passed else "FAILED")
    return run


def _jet_vector(m: ContactMap, points: np.ndarray) -> np.ndarray:
    jet = gamma_batch(m, points)
    return np.hstack([jet.base, jet.p, jet.theta[:, None]])


def graph_jacobian_error(m: ContactMap, points: np.ndarray, step: float = FD_STEP) -> float:
    """Return the relative central-difference error of the graph derivative."""
    count, dim = points.shape
    shifts = np.eye(dim) * step
    plus = (points[:, None, :] + shifts[None, :, :]).reshape(-1, dim)
    minus = (points[:, None, :] - shifts[None, :, :]).reshape(-1, dim)
    difference = (_jet_vector(m, plus) - _jet_vector(m, minus)).reshape(count, dim, -1)
    numeric = np.transpose(difference, (0, 2, 1)) / (2.0 * step)
    analytic = gamma_jacobian_batch(m, points)
    return float(np.abs(analytic - numeric).max() / max(1.0, np.abs(analytic).max()))


def sample_box(m: ContactMap, rng: np.random.Generator, count: int, z_range=(0.0, 1.0)):
    """Return ``count`` uniform samples of the support box times ``z_range``."""
    low, high = m.bounding_box()
    planar = rng.uniform(low, high, size=(count, low.size))
    z = rng.uniform(z_range[0], z_range[1], size=(count, 1))
    return np.hstack([planar, z])


@_in_run_context
def run_graph_check(
    cfg: ExperimentConfig, k: int, progress: bool = False, write: bool = True
) -> GraphCheckRun:
    """Check the Legendrian graph of phi^k and its zero wall.

    The Legendrian residual is evaluated on a 5^(2n+1) grid over the support
    box, the graph derivative against central differences at random points
    drawn with ``cfg.seed``, and the zero wall against a census up to ``k``.
    """
    m = cfg.build_map()
    mk = iterate(m, k)
    rng = np.random.default_rng(cfg.seed)

    grid = sample_grid(m, GRAPH_GRID_RESOLUTION, cfg.z_range)
    residuals = legendrian_residual_batch(mk, grid)
    legendrian = {
        "grid_points": int(grid.shape[0]),
        "max_residual": float(residuals.max()),
        "bound": LEGENDRIAN_BOUND,
        "passed": bool(residuals.max() <= LEGENDRIAN_BOUND),
    }
    jacobian_error = graph_jacobian_error(mk, sample_box(m, rng, FD_SAMPLES, cfg.z_range))
    jacobian = {
        "samples": FD_SAMPLES,
        "max_relative_error": jacobian_error,
        "bound": JACOBIAN_BOUND,
        "passed": jacobian_error <= JACOBIAN_BOUND,
    }

    errors: Dict[str, List[str]] = {}
    census = _census(cfg, m, k, progress)
    errors.update({str(j): [msg] for j, msg in census.errors.items()})
    wall = _zero_wall(cfg, m, census, k, errors) if k in census.per_k else None

    document = {
        "config_echo": cfg.to_dict(),
        "k": k,
        "legendrian": legendrian,
        "jacobian": jacobian,
        "zero_wall": wall.to_dict() if wall else None,
        "errors": errors,
    }
    passed = (
        legendrian["passed"]
        and jacobian["passed"]
        and wall is not None
        and wall.passed
        and not errors
    )
    run = GraphCheckRun(k, document, bool(passed))
    if write:
        write_json(document, cfg.graph_report_path)
        run.files = {"report": cfg.graph_report_path}
    logger.info("Graph check of %r k=%d %s", m, k, "passed" if run.passed else "FAILED")
    return run
