""".. Ignore pydocstyle D400.

==========
Integrator
==========

Fixed-step RK4 integration of contact Hamiltonian flows together with the
variational data needed by the translated-point solver::

    q'      = X_H(q, t)
    g'      = H_z(q, t)
    grad_g' = J^T grad(H_z)(q, t)
    J'      = DX_H(q, t) J

starting from g = 0, grad_g = 0 and J = I. All start points of a batch are
integrated at once; points outside the support of H are returned as they
are, without integration.

.. autoclass:: IntegratorSettings
    :members:

.. autoclass:: FlowState
    :members:

.. autoclass:: FlowBatch
    :members:

.. autofunction:: flow_batch

.. autofunction:: flow

"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from contactlab.constants import DEFAULT_STEPS_PER_UNIT, RICHARDSON_TOL
from contactlab.core.geometry import ContactPoint, as_batch
from contactlab.core.hamiltonians import Hamiltonian
from contactlab.core.vector_field import field_terms
from contactlab.exceptions import (
    IntegrationError,
    ValidationError,
    handle_floating_point_errors,
)

logger = logging.getLogger(__name__)

# Steps between finiteness checks of the integrated state.
FINITE_CHECK_EVERY = 50


@dataclass(frozen=True)
class IntegratorSettings:
    """Settings of the fixed-step integrator.

    :param steps_per_unit: RK4 steps per unit of integration time
    :param richardson_check: integrate again with twice as many steps and
        compare the results
    :param richardson_tol: warn when the two integrations differ by more
    """

    steps_per_unit: int = DEFAULT_STEPS_PER_UNIT
    richardson_check: bool = False
    richardson_tol: float = RICHARDSON_TOL

    def __post_init__(self):
        """Validate settings."""
        if (
            isinstance(self.steps_per_unit, bool)
            or not isinstance(self.steps_per_unit, int)
            or self.steps_per_unit < 1
        ):
            raise ValidationError(
                f"steps_per_unit must be a positive integer, got {self.steps_per_unit!r}."
            )
        if not self.richardson_tol > 0:
            raise ValidationError(
                f"richardson_tol must be positive, got {self.richardson_tol!r}."
            )

    def n_steps(self, duration: float) -> int:
        """Return the number of steps used for an interval of given length."""
        return max(1, math.ceil(abs(duration) * self.steps_per_unit))

    def refined(self) -> "IntegratorSettings":
        """Return settings with twice as many steps and no further check."""
        return replace(self, steps_per_unit=2 * self.steps_per_unit, richardson_check=False)


@dataclass(frozen=True)
class FlowState:
    """Terminal state of a single flow line.

    ``g`` is the conformal factor of the flow map at the start point,
    ``grad_g`` its gradient and ``jacobian`` the derivative of the flow map.
    """

    point: ContactPoint
    g: float
    grad_g: np.ndarray
    jacobian: np.ndarray
    t: float


@dataclass(frozen=True)
class FlowBatch:
    """Terminal states of a batch of flow lines.

    ``grad_g`` and ``jacobian`` are None when the batch was integrated
    without the variational equations.
    """

    points: np.ndarray
    g: np.ndarray
    grad_g: Optional[np.ndarray]
    jacobian: Optional[np.ndarray]
    t: float
    richardson_estimate: Optional[float] = None

    def __len__(self):
        """Return the number of flow lines."""
        return self.points.shape[0]

    def state(self, index: int, periodic_z: bool = False) -> FlowState:
        """Return the state of one flow line."""
        if self.jacobian is None:
            raise ValidationError("Batch was integrated without variational equations.")
        return FlowState(
            point=ContactPoint.from_array(self.points[index], periodic_z=periodic_z),
            g=float(self.g[index]),
            grad_g=self.grad_g[index].copy(),
            jacobian=self.jacobian[index].copy(),
            t=self.t,
        )


def _rhs(hamiltonian, state, t, dim, variational):
    """Right hand side of the packed state [q, g, grad_g, J].

    Hamiltonian values are not checked here; :func:`_rk4` checks the state.
    """
    m = state.shape[0]
    terms = field_terms(
        hamiltonian, state[:, :dim], t, order=2 if variational else 1, checked=False
    )
    out = np.empty_like(state)
    out[:, :dim] = terms.field
    out[:, dim] = terms.h_z
    if variational:
        jac = state[:, 2 * dim + 1 :].reshape(m, dim, dim)
        out[:, dim + 1 : 2 * dim + 1] = np.matmul(terms.grad_h_z[:, None, :], jac)[:, 0, :]
        out[:, 2 * dim + 1 :] = np.matmul(terms.jacobian, jac).reshape(m, dim * dim)
    return out


@handle_floating_point_errors
def _rk4(hamiltonian, points, t0, t1, n_steps, variational):
    """Integrate the packed state with classical RK4."""
    m, dim = points.shape
    width = 2 * dim + 1 + dim * dim if variational else dim + 1
    state = np.zeros((m, width))
    state[:, :dim] = points
    if variational:
        state[:, 2 * dim + 1 :] = np.tile(np.eye(dim).ravel(), (m, 1))

    dt = (t1 - t0) / n_steps
    with np.errstate(over="raise", invalid="raise", divide="raise", under="ignore"):
        for step in range(n_steps):
            t = t0 + step * dt
            k1 = _rhs(hamiltonian, state, t, dim, variational)
            k2 = _rhs(hamiltonian, state + 0.5 * dt * k1, t + 0.5 * dt, dim, variational)
            k3 = _rhs(hamiltonian, state + 0.5 * dt * k2, t + 0.5 * dt, dim, variational)
            k4 = _rhs(hamiltonian, state + dt * k3, t + dt, dim, variational)
            state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if (step + 1) % FINITE_CHECK_EVERY == 0 or step + 1 == n_steps:
                if not np.all(np.isfinite(state)):
                    raise IntegrationError("Non-finite flow state", time=t + dt)
    return state


def flow_batch(
    hamiltonian: Hamiltonian,
    points,
    t0: float = 0.0,
    t1: float = 1.0,
    settings: Optional[IntegratorSettings] = None,
    variational: bool = True,
) -> FlowBatch:
    """Integrate the flow of ``hamiltonian`` from ``t0`` to ``t1``.

    Backward integration (``t1 < t0``) is allowed. The z coordinate is
    integrated as a real number.

    :param hamiltonian: contact Hamiltonian
    :param points: ContactPoint, list of ContactPoints or (M, 2n+1) array
    :param t0: start time
    :param t1: end time
    :param settings: integrator settings, defaults are used if not given
    :param variational: also integrate g's gradient and the flow Jacobian
    """
    settings = settings or IntegratorSettings()
    points = as_batch(points).copy()
    m, dim = points.shape
    if dim != hamiltonian.dim:
        raise ValidationError(
            f"Expected points of dimension {hamiltonian.dim}, got {dim}."
        )
    if not np.all(np.isfinite(points)):
        raise ValidationError("Start points must be finite.")

    g = np.zeros(m)
    grad_g = np.zeros((m, dim)) if variational else None
    jacobian = np.tile(np.eye(dim), (m, 1, 1)) if variational else None
    estimate = None

    active = np.flatnonzero(hamiltonian.support.contains(points))
    if t0 == t1 or active.size == 0:
        return FlowBatch(points, g, grad_g, jacobian, float(t1), estimate)

    n_steps = settings.n_steps(t1 - t0)
    state = _rk4(hamiltonian, points[active], float(t0), float(t1), n_steps, variational)

    if settings.richardson_check:
        fine = _rk4(
            hamiltonian, points[active], float(t0), float(t1), 2 * n_steps, variational
        )
        estimate = float(np.abs(fine[:, : dim + 1] - state[:, : dim + 1]).max())
        if estimate > settings.richardson_tol:
            logger.warning(
                "Richardson check of %r on [%s, %s]: step doubling changes the result by %.3e.",
                hamiltonian,
                t0,
                t1,
                estimate,
            )

    points[active] = state[:, :dim]
    g[active] = state[:, dim]
    if variational:
        grad_g[active] = state[:, dim + 1 : 2 * dim + 1]
        jacobian[active] = state[:, 2 * dim + 1 :].reshape(-1, dim, dim)

    return FlowBatch(points, g, grad_g, jacobian, float(t1), estimate)


def flow(
    hamiltonian: Hamiltonian,
    q0: ContactPoint,
    t0: float = 0.0,
    t1: float = 1.0,
    settings: Optional[IntegratorSettings] = None,
) -> FlowState:
    """Integrate a single flow line and return its terminal FlowState."""
    batch = flow_batch(hamiltonian, q0, t0, t1, settings)
    return batch.state(0, periodic_z=q0.periodic_z)
