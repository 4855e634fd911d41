"""Translated-point residual (phi_1 - x, phi_2 - y, g) and its Jacobian.

The same formula serves R^{2n+1} and R^{2n} x S^1: Reeb orbits are the z
lines (or circles), so z is unconstrained.
"""

from typing import NamedTuple, Optional

import numpy as np

from contactlab.core.geometry import as_batch
from contactlab.maps.contactomorphism import BatchEvaluation, ContactMap, evaluate_batch
from contactlab.utils.decorators import single_point


class ResidualBatch(NamedTuple):
    """Residuals of a batch with their Jacobians and the underlying evaluation."""

    values: np.ndarray
    jacobian: Optional[np.ndarray]
    evaluation: BatchEvaluation


def residual_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return the residual rows from a precomputed evaluation."""
    dim = evaluation.images.shape[1]
    values = np.empty_like(evaluation.images)
    values[:, : dim - 1] = evaluation.images[:, : dim - 1] - evaluation.points[:, : dim - 1]
    values[:, dim - 1] = evaluation.g
    return values


def residual_jacobian_from_evaluation(evaluation: BatchEvaluation) -> np.ndarray:
    """Return residual Jacobians from a precomputed evaluation."""
    dim = evaluation.images.shape[1]
    jac = evaluation.jacobian.copy()
    jac[:, : dim - 1, :] -= np.eye(dim)[None, : dim - 1, :]
    jac[:, dim - 1, :] = evaluation.grad_g
    return jac


def residual_batch(m: ContactMap, points, with_jacobian: bool = True) -> ResidualBatch:
    """Return residuals (and Jacobians) of ``m`` on a batch of points."""
    evaluation = evaluate_batch(m, as_batch(points), variational=with_jacobian)
    values = residual_from_evaluation(evaluation)
    jac = residual_jacobian_from_evaluation(evaluation) if with_jacobian else None
    return ResidualBatch(values, jac, evaluation)


@single_point
def residual(m: ContactMap, q) -> np.ndarray:
    """Return (phi_1(q) - x, phi_2(q) - y, g(q)); zero at translated points."""
    return residual_batch(m, q, with_jacobian=False).values


@single_point
def residual_jacobian(m: ContactMap, q) -> np.ndarray:
    """Return the derivative of :func:`residual` at ``q``.

    Rows 1..2n are (D phi - Id) restricted to the (x, y) outputs, the last
    row is grad g.
    """
    return residual_batch(m, q).jacobian
