""".. Ignore pydocstyle D400.

=============
Verify suites
=============

Invariant suites of the ``verify`` command. Every check reports the largest
observed error against its bound (or, for negative controls, the largest
observed value against a lower bound)::

    report = run_verify("core")
    report.summary
    report.passed

Suites: ``core``, ``maps``, ``translated``, ``graph`` and ``all``. All
sampling uses a seeded numpy generator.

.. autofunction:: run_verify

"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd

from contactlab.constants import DEFAULT_STEPS_PER_UNIT, RICHARDSON_TOL
from contactlab.core.geometry import ContactPoint, alpha
from contactlab.core.hamiltonians import check_hamiltonian
from contactlab.core.integrator import IntegratorSettings, flow_batch
from contactlab.core.vector_field import contact_vector_field
from contactlab.exceptions import UnknownSuiteError
from contactlab.experiments.runner import graph_jacobian_error
from contactlab.graph.jet import (
    gamma_batch,
    legendrian_residual_batch,
    legendrian_residual_from_evaluation,
    product_graph_residual_from_evaluation,
    sample_grid,
)
from contactlab.maps.catalog import (
    FAMILIES,
    HAMILTONIAN_LIFT,
    RADIAL_TWIST,
    Z_PERTURBED_TWIST,
    make_family,
)
from contactlab.maps.contactomorphism import (
    ContactMap,
    compose,
    evaluate_batch,
    inverse,
    iterate,
)
from contactlab.maps.lift import lift_primitive, lift_primitive_defect
from contactlab.translated.clustering import cluster_labels
from contactlab.translated.finder import check_iteration_lemma, search_translated_points
from contactlab.translated.points import SeedStrategy
from contactlab.translated.residual import residual_batch

logger = logging.getLogger(__name__)

SUITE_CORE = "core"
SUITE_MAPS = "maps"
SUITE_TRANSLATED = "translated"
SUITE_GRAPH = "graph"
SUITE_ALL = "all"
SUITES = (SUITE_CORE, SUITE_MAPS, SUITE_TRANSLATED, SUITE_GRAPH, SUITE_ALL)

KIND_MAX = "max"
KIND_MIN = "min"

SAMPLES = 1000
FD_STEP = 1e-5
INTEGRATOR_TOL = 10 * RICHARDSON_TOL
NEWTON_TOL = 1e-9


@dataclass(frozen=True)
class Check:
    """One invariant check.

    ``kind="max"`` passes when ``observed <= bound``, ``kind="min"`` when
    ``observed >= bound``.
    """

    suite: str
    name: str
    observed: float
    bound: float
    kind: str = KIND_MAX

    @property
    def passed(self) -> bool:
        """Return True when the observed value respects the bound."""
        if not math.isfinite(self.observed):
            return False
        if self.kind == KIND_MIN:
            return self.observed >= self.bound
        return self.observed <= self.bound


@dataclass
class VerifyReport:
    """Checks of one or more suites."""

    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True when every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def summary(self) -> pd.DataFrame:
        """Return the checks as a table."""
        return pd.DataFrame(
            [
                {
                    "suite": c.suite,
                    "check": c.name,
                    "observed": c.observed,
                    "bound": c.bound,
                    "kind": c.kind,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            columns=["suite", "check", "observed", "bound", "kind", "passed"],
        )


def verify_families(settings: IntegratorSettings) -> Dict[str, ContactMap]:
    """Return every catalog family at default parameters plus a time modulated twist."""
    maps = {name: make_family(name, settings=settings) for name in sorted(FAMILIES)}
    maps["modulated_plateau_twist"] = make_family(
        RADIAL_TWIST, {"profile": "plateau", "modulation": 0.3}, settings=settings
    )
    return maps


def sample_points(m: ContactMap, rng: np.random.Generator, count: int) -> np.ndarray:
    """Return ``count`` points inside the support of the first Hamiltonian of ``m``."""
    support = m.hamiltonians[0].support
    planar = support.sample_interior(rng, count, m.n, 0.999)
    return np.hstack([planar, rng.uniform(-1.0, 1.0, size=(count, 1))])


def tuned_axis_map(epsilon: float, settings: IntegratorSettings) -> ContactMap:
    """Return a z perturbed twist whose axis revolves once per unit time.

    On the axis z' = c (1 + epsilon sin 2 pi z), so c = 1 / sqrt(1 - epsilon^2)
    makes every axis point a translated point of every iterate, with action k.
    """
    return make_family(
        Z_PERTURBED_TWIST,
        {"epsilon": epsilon, "amplitude": 1.0 / math.sqrt(1.0 - epsilon**2)},
        settings=settings,
    )


def radial_oracle_actions(amplitude: float, k: int) -> List[float]:
    """Return actions of phi^k for the quadratic radial twist h(s) = c (1 - s)^2.

    Circles rotate by 4 c k (1 - s); full turns at 1 - s = pi j / (2 c k)
    give action c k (1 - s^2). The axis (s = 0) has action c k.
    """
    actions = [amplitude * k]
    j = 1
    while True:
        u = math.pi * j / (2.0 * amplitude * k)
        if u >= 1.0:
            break
        s = 1.0 - u
        actions.append(amplitude * k * (1.0 - s * s))
        j += 1
    return sorted(actions)


def lift_fixed_point(tilt: float) -> float:
    """Return x of the off-centre planar fixed point of the cubic lift (amplitude 1).

    Solves 7 tilt x^2 + 6 x - tilt = 0.
    """
    return (-6.0 + math.sqrt(36.0 + 28.0 * tilt**2)) / (14.0 * tilt)


def _fd_images(m: ContactMap, points: np.ndarray, step: float = FD_STEP):
    """Return central-difference Jacobians of images and gradients of g."""
    count, dim = points.shape
    shifts = np.eye(dim) * step
    plus = evaluate_batch(
        m, (points[:, None, :] + shifts[None, :, :]).reshape(-1, dim), variational=False
    )
    minus = evaluate_batch(
        m, (points[:, None, :] - shifts[None, :, :]).reshape(-1, dim), variational=False
    )
    jacobian = (plus.images - minus.images).reshape(count, dim, dim) / (2.0 * step)
    grad_g = (plus.g - minus.g).reshape(count, dim) / (2.0 * step)
    return np.transpose(jacobian, (0, 2, 1)), grad_g


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))


def core_suite(rng: np.random.Generator, settings: IntegratorSettings) -> List[Check]:
    """Convention, conformal law, group law and variational checks."""
    checks = []
    for label, m in verify_families(settings).items():
        hamiltonian = m.hamiltonians[0]
        times = rng.uniform(0.0, 1.0, size=10)
        worst = 0.0
        for t, chunk in zip(times, np.array_split(sample_points(m, rng, SAMPLES), 10)):
            value = hamiltonian.value(chunk, t)
            vector = contact_vector_field(hamiltonian, chunk, t)
            error = np.abs(alpha(chunk, vector) - value) / (1.0 + np.abs(value))
            worst = max(worst, float(error.max()))
        checks.append(Check(SUITE_CORE, f"alpha_reproduction[{label}]", worst, 1e-12))

        violations = check_hamiltonian(hamiltonian, rng)
        for violation in violations:
            logger.warning("%s: %s", label, violation)
        checks.append(Check(SUITE_CORE, f"hamiltonian_checks[{label}]", len(violations), 0))

        points = sample_points(m, rng, SAMPLES)
        evaluation = evaluate_batch(m, points)
        fd_jacobian, fd_grad_g = _fd_images(m, points)
        dim = m.dim
        pullback = np.empty((points.shape[0], dim))
        expected = np.empty((points.shape[0], dim))
        for i in range(dim):
            v = np.zeros_like(points)
            v[:, i] = 1.0
            pullback[:, i] = alpha(evaluation.images, fd_jacobian[:, :, i])
            expected[:, i] = np.exp(evaluation.g) * alpha(points, v)
        conformal = float((np.abs(pullback - expected) / (1.0 + np.abs(expected))).max())
        checks.append(Check(SUITE_CORE, f"conformal_law[{label}]", conformal, 1e-6))
        checks.append(
            Check(
                SUITE_CORE,
                f"jacobian_consistency[{label}]",
                _relative(evaluation.jacobian, fd_jacobian),
                1e-5,
            )
        )
        checks.append(
            Check(
                SUITE_CORE,
                f"grad_g_consistency[{label}]",
                _relative(evaluation.grad_g, fd_grad_g),
                1e-5,
            )
        )
        checks.append(
            Check(
                SUITE_CORE,
                f"positive_determinant[{label}]",
                int(np.sum(np.linalg.det(evaluation.jacobian) <= 0)),
                0,
            )
        )

        subset = points[:100]
        whole = flow_batch(hamiltonian, subset, 0.0, 1.0, settings)
        first = flow_batch(hamiltonian, subset, 0.0, 0.5, settings)
        second = flow_batch(hamiltonian, first.points, 0.5, 1.0, settings)
        group = max(
            float(np.abs(second.points - whole.points).max()),
            float(np.abs(first.g + second.g - whole.g).max()),
            float(np.abs(np.matmul(second.jacobian, first.jacobian) - whole.jacobian).max()),
        )
        checks.append(Check(SUITE_CORE, f"group_law[{label}]", group, INTEGRATOR_TOL))
    return checks


def maps_suite(rng: np.random.Generator, settings: IntegratorSettings) -> List[Check]:
    """Cocycle, composition, inverse and lift checks."""
    checks = []
    families = verify_families(settings)
    for label, m in families.items():
        points = sample_points(m, rng, 10)
        images, g_sum, worst = points, np.zeros(points.shape[0]), 0.0
        for k in range(1, 6):
            step = evaluate_batch(m, images, variational=False)
            g_sum = g_sum + step.g
            images = step.images
            g_k = evaluate_batch(iterate(m, k), points, variational=False).g
            worst = max(worst, float(np.abs(g_k - g_sum).max()))
        checks.append(Check(SUITE_MAPS, f"cocycle[{label}]", worst, 1e-8))

        outside = np.hstack(
            [
                rng.uniform(1.05, 2.0, size=(20, 2 * m.n)),
                rng.uniform(-1.0, 1.0, size=(20, 1)),
            ]
        )
        if m.bounded_support:
            outside = outside[~m.in_closure(outside)]
            evaluation = evaluate_batch(m, outside)
            moved = max(
                float(np.abs(evaluation.images - outside).max(initial=0.0)),
                float(np.abs(evaluation.g).max(initial=0.0)),
            )
            checks.append(Check(SUITE_MAPS, f"support_short_circuit[{label}]", moved, 0.0))

        if m.z_independent:
            g = evaluate_batch(m, sample_points(m, rng, 100), variational=False).g
            checks.append(
                Check(SUITE_MAPS, f"z_independent_g[{label}]", float(np.abs(g).max()), 1e-12)
            )

    first, second = families[RADIAL_TWIST], families[Z_PERTURBED_TWIST]
    points = sample_points(first, rng, 20)
    e1 = evaluate_batch(first, points)
    e2 = evaluate_batch(second, e1.images)
    both = evaluate_batch(compose(second, first), points)
    composition = max(
        _relative(both.images, e2.images),
        _relative(both.g, e1.g + e2.g),
        _relative(both.jacobian, np.matmul(e2.jacobian, e1.jacobian)),
    )
    checks.append(Check(SUITE_MAPS, "composition", composition, 1e-9))

    m = families[Z_PERTURBED_TWIST]
    points = sample_points(m, rng, 100)
    forward = evaluate_batch(m, points, variational=False)
    backward = evaluate_batch(inverse(m), forward.images, variational=False)
    checks.append(
        Check(
            SUITE_MAPS,
            "inverse_round_trip",
            float(np.abs(backward.images - points).max()),
            INTEGRATOR_TOL,
        )
    )
    checks.append(
        Check(SUITE_MAPS, "g_antisymmetry", float(np.abs(backward.g + forward.g).max()), 1e-6)
    )

    flat = make_family(Z_PERTURBED_TWIST, {"epsilon": 0.0}, settings=settings)
    a = evaluate_batch(flat, points, variational=False)
    b = evaluate_batch(families[RADIAL_TWIST], points, variational=False)
    checks.append(
        Check(
            SUITE_MAPS,
            "epsilon_zero_is_radial",
            max(float(np.abs(a.images - b.images).max()), float(np.abs(a.g - b.g).max())),
            INTEGRATOR_TOL,
        )
    )

    lift = families[HAMILTONIAN_LIFT]
    defect = lift_primitive_defect(lift, sample_points(lift, rng, 50))
    checks.append(Check(SUITE_MAPS, "lift_primitive_defect", float(defect.max()), 1e-5))
    return checks


def translated_suite(rng: np.random.Generator, settings: IntegratorSettings) -> List[Check]:
    """Residual derivative, rotation oracle, iteration lemma and dedupe checks."""
    checks = []
    m = make_family(Z_PERTURBED_TWIST, settings=settings)
    points = sample_points(m, rng, 20)
    analytic = residual_batch(m, points).jacobian
    count, dim = points.shape
    shifts = np.eye(dim) * FD_STEP
    plus = residual_batch(
        m, (points[:, None, :] + shifts[None, :, :]).reshape(-1, dim), False
    ).values
    minus = residual_batch(
        m, (points[:, None, :] - shifts[None, :, :]).reshape(-1, dim), False
    ).values
    numeric = np.transpose(((plus - minus) / (2.0 * FD_STEP)).reshape(count, dim, dim), (0, 2, 1))
    checks.append(
        Check(SUITE_TRANSLATED, "residual_jacobian_fd", _relative(analytic, numeric), 1e-5)
    )

    twist = make_family(
        RADIAL_TWIST, {"profile": "quadratic", "amplitude": math.pi}, settings=settings
    )
    seeds = SeedStrategy(resolution=16)
    for k in (1, 2):
        found = search_translated_points(twist, k, seeds).actions
        oracle = radial_oracle_actions(math.pi, k)
        if found:
            gap = max(
                max(min(abs(a - b) for b in oracle) for a in found),
                max(min(abs(a - b) for a in found) for b in oracle),
            )
        else:
            gap = math.inf
        checks.append(Check(SUITE_TRANSLATED, f"radial_oracle[k={k}]", gap, 1e-6))

    axis = tuned_axis_map(0.5, settings)
    derived, cocycle = 0.0, 0.0
    for _ in range(20):
        k1, k2 = sorted(rng.choice([1, 2, 3], size=2, replace=False).tolist())
        q = ContactPoint.from_array([0.0, 0.0, rng.uniform(0.0, 1.0)])
        report = check_iteration_lemma(axis, q, k1, k2, NEWTON_TOL)
        derived = max(derived, report.residual_derived)
        cocycle = max(cocycle, report.cocycle_defect)
    checks.append(Check(SUITE_TRANSLATED, "iteration_lemma_residual", derived, 10 * NEWTON_TOL))
    checks.append(Check(SUITE_TRANSLATED, "iteration_lemma_cocycle", cocycle, 1e-8))

    labels = cluster_labels(np.array([[0.0, 0.0, 0.2], [0.0, 0.0, 1.2]]), 0.1, True)
    checks.append(
        Check(SUITE_TRANSLATED, "dedupe_modulo_one", float(np.unique(labels).size - 1), 0.0)
    )

    identity = ContactMap.identity(1)
    result = search_translated_points(identity, 1, replace(seeds, resolution=4))
    checks.append(
        Check(
            SUITE_TRANSLATED,
            "identity_spectrum",
            float(len(result.points) + (0 if result.spectrum == [0.0] else 1)),
            0.0,
        )
    )

    lift = make_family(HAMILTONIAN_LIFT, settings=settings)
    tilt = FAMILIES[HAMILTONIAN_LIFT]["tilt"]
    q = np.array([[lift_fixed_point(tilt), 0.0, 0.0]])
    batch = residual_batch(lift, q, with_jacobian=False)
    action = batch.evaluation.images[0, -1] - q[0, -1]
    checks.append(
        Check(
            SUITE_TRANSLATED,
            "lift_fixed_point_residual",
            float(np.linalg.norm(batch.values[0])),
            NEWTON_TOL,
        )
    )
    checks.append(
        Check(
            SUITE_TRANSLATED,
            "lift_fixed_point_action",
            max(
                abs(action - float(lift.hamiltonians[0].value(q)[0])),
                abs(action - float(lift_primitive(lift, q)[0])),
            ),
            1e-6,
        )
    )
    return checks


def graph_suite(rng: np.random.Generator, settings: IntegratorSettings) -> List[Check]:
    """Legendrian residual table, negative control and derivative checks."""
    checks = []
    for label, m in verify_families(settings).items():
        grid = sample_grid(m, 5)
        for k in range(1, 5):
            residuals = legendrian_residual_batch(iterate(m, k), grid)
            checks.append(
                Check(SUITE_GRAPH, f"legendrian[{label},k={k}]", float(residuals.max()), 1e-6)
            )
        evaluation = evaluate_batch(m, grid)
        checks.append(
            Check(
                SUITE_GRAPH,
                f"product_graph[{label}]",
                float(product_graph_residual_from_evaluation(evaluation).max()),
                1e-6,
            )
        )

    m = make_family(Z_PERTURBED_TWIST, settings=settings)
    evaluation = evaluate_batch(m, sample_grid(m, 5))
    corrupted = evaluation.replace(
        g=np.zeros_like(evaluation.g), grad_g=np.zeros_like(evaluation.grad_g)
    )
    checks.append(
        Check(
            SUITE_GRAPH,
            "corrupted_negative_control",
            float(legendrian_residual_from_evaluation(corrupted).max()),
            1e-3,
            KIND_MIN,
        )
    )
    checks.append(
        Check(
            SUITE_GRAPH,
            "gamma_jacobian_fd",
            graph_jacobian_error(m, sample_points(m, rng, 20)),
            1e-5,
        )
    )

    identity = ContactMap.identity(1)
    jet = gamma_batch(identity, sample_grid(m, 3))
    checks.append(
        Check(
            SUITE_GRAPH,
            "identity_zero_section",
            max(float(np.abs(jet.p).max()), float(np.abs(jet.theta).max())),
            0.0,
        )
    )
    return checks


SUITE_RUNNERS: Dict[str, Callable[[np.random.Generator, IntegratorSettings], List[Check]]] = {
    SUITE_CORE: core_suite,
    SUITE_MAPS: maps_suite,
    SUITE_TRANSLATED: translated_suite,
    SUITE_GRAPH: graph_suite,
}


def _suites(suite: str) -> Tuple[str, ...]:
    if suite == SUITE_ALL:
        return tuple(SUITE_RUNNERS)
    if suite not in SUITE_RUNNERS:
        raise UnknownSuiteError(
            f"Unknown suite '{suite}', expected one of: {', '.join(SUITES)}."
        )
    return (suite,)


def run_verify(
    suite: str, seed: int = 0, steps_per_unit: int = DEFAULT_STEPS_PER_UNIT
) -> VerifyReport:
    """Run an invariant suite (or ``"all"``) and return its checks.

    :raises UnknownSuiteError: for an unknown suite name
    """
    names = _suites(suite)
    settings = IntegratorSettings(steps_per_unit=steps_per_unit)
    report = VerifyReport()
    for name in names:
        rng = np.random.default_rng(seed)
        checks = SUITE_RUNNERS[name](rng, settings)
        failed = [c.name for c in checks if not c.passed]
        logger.info("Suite %s: %d checks, %d failed", name, len(checks), len(failed))
        for check_name in failed:
            logger.warning("Suite %s: check %s failed", name, check_name)
        report.checks.extend(checks)
    return report
