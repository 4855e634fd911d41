"""Contact Hamiltonian vector field X_H and its derivative DX_H.

Convention for alpha = dz - y.dx::

    X_H = (-H_y, H_x + y H_z, H - y.H_y)

so that alpha(X_H) = H and the Reeb field d/dz is generated by H = 1.
"""

from typing import NamedTuple, Optional

import numpy as np

from contactlab.core.geometry import ContactPoint, as_batch
from contactlab.core.hamiltonians import Hamiltonian


class FieldTerms(NamedTuple):
    """Right hand side data of the coupled flow equations on a batch."""

    field: np.ndarray
    jacobian: Optional[np.ndarray]
    h_z: np.ndarray
    grad_h_z: Optional[np.ndarray]


def field_terms(
    hamiltonian: Hamiltonian,
    points: np.ndarray,
    t: float,
    order: int = 2,
    checked: bool = True,
) -> FieldTerms:
    """Evaluate X_H, DX_H, H_z and the gradient of H_z on a batch.

    With ``order=1`` only the field and H_z are computed. With
    ``checked=False`` the Hamiltonian values are not checked for finiteness.
    """
    n = hamiltonian.n
    z = 2 * n
    if checked:
        values = hamiltonian.evaluate(points, t, order=order)
    else:
        values = hamiltonian.evaluate_unchecked(points, t, order)
    grad = values.gradient
    y = points[:, n:z]
    h_x = grad[:, :n]
    h_y = grad[:, n:z]
    h_z = grad[:, z]

    field = np.empty_like(points)
    field[:, :n] = -h_y
    field[:, n:z] = h_x + y * h_z[:, None]
    field[:, z] = values.value - np.einsum("mi,mi->m", y, h_y)

    if order < 2:
        return FieldTerms(field, None, h_z, None)

    hess = values.hessian
    jac = np.empty_like(hess)
    jac[:, :n, :] = -hess[:, n:z, :]
    jac[:, n:z, :] = hess[:, :n, :] + y[:, :, None] * hess[:, z, None, :]
    idx = np.arange(n, z)
    jac[:, idx, idx] += h_z[:, None]
    jac[:, z, :] = grad - np.matmul(y[:, None, :], hess[:, n:z, :])[:, 0, :]
    jac[:, z, n:z] -= h_y

    return FieldTerms(field, jac, h_z, hess[:, z, :])


def contact_vector_field(hamiltonian: Hamiltonian, q, t: float = 0.0) -> np.ndarray:
    """Return X_H(q, t).

    ``q`` may be a ContactPoint (a vector is returned) or a batch of points
    (an array of vectors is returned).
    """
    field = field_terms(hamiltonian, as_batch(q), t, order=1).field
    return field[0] if isinstance(q, ContactPoint) else field


def vector_field_jacobian(hamiltonian: Hamiltonian, q, t: float = 0.0) -> np.ndarray:
    """Return the derivative DX_H(q, t) used by the variational equation."""
    jac = field_terms(hamiltonian, as_batch(q), t, order=2).jacobian
    return jac[0] if isinstance(q, ContactPoint) else jac
