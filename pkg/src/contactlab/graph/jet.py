""".. Ignore pydocstyle D400.

==============
Legendrian jet
==============

Legendrian graph of a contactomorphism phi = (phi_1, phi_2, phi_3) with
conformal factor g in 1-jet coordinates::

    base  = (x, phi_2, z)
    p     = (phi_2 - e^g y, x - phi_1, e^g - 1)
    theta = x.phi_2 - phi_1.phi_2 + phi_3 - z

The graph is Legendrian: d theta = p . d(base), which unwinds to
phi^* alpha = e^g alpha. Its intersections with the zero wall {p = 0} are
the translated points, and there theta is the contact action.

Every operation has a ``*_from_evaluation`` form that works on a
precomputed :class:`~contactlab.maps.contactomorphism.BatchEvaluation`, so
that deliberately corrupted evaluations can be checked as well.

.. autofunction:: gamma

.. autofunction:: gamma_jacobian

.. autofunction:: legendrian_residual

.. autofunction:: product_graph

.. autofunction:: product_graph_residual

"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from contactlab.core.geometry import alpha, as_batch, split
from contactlab.exceptions import ValidationError
from contactlab.maps.contactomorphism import BatchEvaluation, ContactMap, evaluate_batch
from contactlab.utils.decorators import single_point


class JetBatch(NamedTuple):
    """Graph points of a batch: base (M, 2n+1), p (M, 2n+1), theta (M,)."""

    base: np.ndarray
    p: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class JetGraphPoint:
    """Image of one point under the Legendrian graph map."""

    base: np.ndarray
    p: np.ndarray
    theta: float

    def __post_init__(self):
        """Validate finiteness."""
        if not (
            np.all(np.isfinite(self.base))
            and np.all(np.isfinite(self.p))
            and np.isfinite(self.theta)
        ):
            raise ValidationError("Jet graph coordinates must be finite.")


def gamma_from_evaluation(evaluation: BatchEvaluation) -> JetBatch:
    """Return graph points from a precomputed evaluation."""
    x, y, z = split(evaluation.points)
    phi_1, phi_2, phi_3 = split(evaluation.images)
    scale = np.exp(evaluation.g)

    base = np.concatenate([x, phi_2, z[:, None]], axis=1)
    p = np.concatenate([phi_2 - scale[:, None] * y, x - phi_1, (scale - 1.0)[:, None]], axis=1)
    theta = (
        np.einsum("mi,mi->m", x, phi_2)
        - np.einsum("mi,mi->m", phi_1, phi_2)
        + phi_3
        - z
    )
    return JetBatch(base, p, theta)


def gamma_jacobian_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return (M, 4n+3, 2n+1) derivatives of the graph map by the chain rule."""
    count, dim = evaluation.points.shape
    n = (dim - 1) // 2
    x, y, _ = split(evaluation.points)
    phi_1, phi_2, _ = split(evaluation.images)
    d_phi_1 = evaluation.jacobian[:, :n, :]
    d_phi_2 = evaluation.jacobian[:, n : 2 * n, :]
    d_phi_3 = evaluation.jacobian[:, 2 * n, :]
    scale = np.exp(evaluation.g)
    eye = np.eye(dim)
    d_x = np.broadcast_to(eye[:n], (count, n, dim))
    d_y = np.broadcast_to(eye[n : 2 * n], (count, n, dim))
    d_z = eye[2 * n]

    jac = np.zeros((count, 2 * dim + 1, dim))
    # base
    jac[:, :n, :] = d_x
    jac[:, n : 2 * n, :] = d_phi_2
    jac[:, 2 * n, :] = d_z
    # p
    jac[:, dim : dim + n, :] = (
        d_phi_2
        - scale[:, None, None] * np.einsum("mi,mj->mij", y, evaluation.grad_g)
        - scale[:, None, None] * d_y
    )
    jac[:, dim + n : dim + 2 * n, :] = d_x - d_phi_1
    jac[:, 2 * dim - 1, :] = scale[:, None] * evaluation.grad_g
    # theta
    jac[:, 2 * dim, :] = (
        np.einsum("mi,mij->mj", phi_2, d_x)
        + np.einsum("mi,mij->mj", x - phi_1, d_phi_2)
        - np.einsum("mi,mij->mj", phi_2, d_phi_1)
        + d_phi_3
        - d_z
    )
    return jac


def legendrian_residual_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return max over basis vectors v of |d theta(v) - p . d base(v)|."""
    dim = evaluation.points.shape[1]
    jac = gamma_jacobian_from_evaluation(evaluation)
    p = gamma_from_evaluation(evaluation).p
    defect = jac[:, 2 * dim, :] - np.einsum("mi,mij->mj", p, jac[:, :dim, :])
    return np.abs(defect).max(axis=1)


def product_graph_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return (q, phi(q), g(q)) rows in M x M x R."""
    return np.concatenate(
        [evaluation.points, evaluation.images, evaluation.g[:, None]], axis=1
    )


def product_graph_residual_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return max over basis vectors v of |e^g alpha_q(v) - alpha_phi(q)(D phi v)|."""
    count, dim = evaluation.points.shape
    scale = np.exp(evaluation.g)
    defect = np.empty((count, dim))
    for i in range(dim):
        v = np.zeros((count, dim))
        v[:, i] = 1.0
        pushed = evaluation.jacobian[:, :, i]
        defect[:, i] = scale * alpha(evaluation.points, v) - alpha(evaluation.images, pushed)
    return np.abs(defect).max(axis=1)


def gamma_batch(m: ContactMap, points) -> JetBatch:
    """Return graph points of a batch."""
    return gamma_from_evaluation(evaluate_batch(m, as_batch(points), variational=False))


def gamma(m: ContactMap, q) -> JetGraphPoint:
    """Return the Legendrian graph point of ``q``."""
    batch = gamma_batch(m, q)
    return JetGraphPoint(batch.base[0], batch.p[0], float(batch.theta[0]))


def gamma_jacobian_batch(m: ContactMap, points) -> np.ndarray:
    """Return graph derivatives of a batch, (M, 4n+3, 2n+1)."""
    return gamma_jacobian_from_evaluation(evaluate_batch(m, as_batch(points)))


@single_point
def gamma_jacobian(m: ContactMap, q) -> np.ndarray:
    """Return the (4n+3) x (2n+1) derivative of the graph map at ``q``."""
    return gamma_jacobian_batch(m, q)


def legendrian_residual_batch(m: ContactMap, points) -> np.ndarray:
    """Return the Legendrian residual at each point of a batch."""
    return legendrian_residual_from_evaluation(evaluate_batch(m, as_batch(points)))


@single_point
def legendrian_residual(m: ContactMap, q) -> float:
    """Return the Legendrian residual of the graph at ``q``."""
    return legendrian_residual_batch(m, q)


@single_point
def product_graph(m: ContactMap, q) -> np.ndarray:
    """Return (q, phi(q), g(q)), a point of M x M x R."""
    return product_graph_from_evaluation(evaluate_batch(m, q, variational=False))


@single_point
def product_graph_residual(m: ContactMap, q) -> float:
    """Return the Legendrian residual of the product graph at ``q``."""
    return product_graph_residual_from_evaluation(evaluate_batch(m, q))


def sample_grid(m: ContactMap, resolution: int = 5, z_range=(0.0, 1.0)) -> np.ndarray:
    """Return a resolution^(2n+1) grid over the support box times ``z_range``."""
    low, high = m.bounding_box()
    axes = [np.linspace(lo, hi, resolution) for lo, hi in zip(low, high)]
    axes.append(np.linspace(z_range[0], z_range[1], resolution))
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m.dim)
