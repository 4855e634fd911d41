"""Prequantization lifts: the z displacement of z-independent flows.

A z-independent Hamiltonian generates phi(x, y, z) = (psi(x, y), z + F(x, y))
where psi is a planar Hamiltonian flow and dF = psi^* lambda - lambda for
lambda = y.dx. F vanishes outside the support.
"""

import numpy as np

from contactlab.core.geometry import as_batch, split
from contactlab.exceptions import ValidationError
from contactlab.maps.contactomorphism import ContactMap, evaluate_batch

DEFAULT_FD_STEP = 1e-5


def _require_lift(m: ContactMap):
    if not m.z_independent:
        raise ValidationError(f"{m!r} is not a lift: its Hamiltonians depend on z.")


def lift_primitive(m: ContactMap, q) -> np.ndarray:
    """Return F(q) = phi_3(q) - z for each point of ``q``."""
    _require_lift(m)
    start = as_batch(q)
    images = evaluate_batch(m, start, variational=False).images
    return images[:, -1] - start[:, -1]


def lift_primitive_defect(m: ContactMap, q, step: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Return max over basis vectors v of |dF(v) - (phi^* lambda - lambda)(v)|.

    dF is taken by central differences of :func:`lift_primitive`, the right
    hand side from the integrated Jacobian.
    """
    _require_lift(m)
    start = as_batch(q)
    count, dim = start.shape
    n = (dim - 1) // 2

    shifts = np.eye(dim) * step
    plus = (start[:, None, :] + shifts[None, :, :]).reshape(-1, dim)
    minus = (start[:, None, :] - shifts[None, :, :]).reshape(-1, dim)
    d_f = (lift_primitive(m, plus) - lift_primitive(m, minus)).reshape(count, dim) / (
        2.0 * step
    )

    evaluation = evaluate_batch(m, start)
    _, image_y, _ = split(evaluation.images)
    _, y, _ = split(start)
    # (phi^* lambda)(e_i) = phi_2 . (D phi e_i)_x
    pullback = np.einsum("mk,mki->mi", image_y, evaluation.jacobian[:, :n, :])
    own = np.zeros((count, dim))
    own[:, :n] = y
    return np.abs(d_f - (pullback - own)).max(axis=1)
