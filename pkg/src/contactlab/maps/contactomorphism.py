""".. Ignore pydocstyle D400.

================
Contactomorphism
================

Contactomorphisms realized as words of Hamiltonian flow atoms. Words are
never tabulated; every evaluation integrates the atoms in order and chains
the conformal factor, its gradient and the Jacobian::

    g(q)      = g_2(phi_1(q)) + g_1(q)
    grad g(q) = grad g_1(q) + D phi_1(q)^T grad g_2(phi_1(q))
    D phi(q)  = D phi_2(phi_1(q)) D phi_1(q)

.. autoclass:: Atom
    :members:

.. autoclass:: ContactMap
    :members:

.. autofunction:: evaluate

.. autofunction:: evaluate_batch

.. autofunction:: iterate

.. autofunction:: inverse

.. autofunction:: compose

"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from contactlab.core.geometry import ContactPoint, as_batch
from contactlab.core.hamiltonians import Hamiltonian
from contactlab.core.integrator import IntegratorSettings, flow_batch
from contactlab.exceptions import ValidationError
from contactlab.utils.decorators import positive_int

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Atom:
    """Time-``t0`` to time-``t1`` flow of a Hamiltonian, or its inverse.

    :param hamiltonian: contact Hamiltonian generating the flow
    :param t0: start time
    :param t1: end time
    :param exponent: ``+1`` for the flow itself, ``-1`` for its inverse
    """

    hamiltonian: Hamiltonian
    t0: float = 0.0
    t1: float = 1.0
    exponent: int = 1

    def __post_init__(self):
        """Validate the exponent."""
        if self.exponent not in (1, -1):
            raise ValidationError(f"Atom exponent must be +1 or -1, got {self.exponent!r}.")

    @property
    def span(self) -> Tuple[float, float]:
        """Return the integration interval (backward for inverted atoms)."""
        if self.exponent == 1:
            return self.t0, self.t1
        return self.t1, self.t0

    def inverted(self) -> "Atom":
        """Return the inverse atom."""
        return replace(self, exponent=-self.exponent)


@dataclass(frozen=True)
class MapEvaluation:
    """Image, conformal factor, its gradient and Jacobian at one point."""

    image: ContactPoint
    g: float
    grad_g: np.ndarray
    jacobian: np.ndarray


@dataclass(frozen=True)
class BatchEvaluation:
    """Evaluation of a map on a batch of points.

    ``grad_g`` and ``jacobian`` are None when the variational equations were
    not integrated.
    """

    points: np.ndarray
    images: np.ndarray
    g: np.ndarray
    grad_g: Optional[np.ndarray]
    jacobian: Optional[np.ndarray]

    def __len__(self):
        """Return the batch size."""
        return self.images.shape[0]

    def item(self, index: int, periodic_z: bool = False) -> MapEvaluation:
        """Return the evaluation at one point of the batch."""
        return MapEvaluation(
            image=ContactPoint.from_array(self.images[index], periodic_z=periodic_z),
            g=float(self.g[index]),
            grad_g=self.grad_g[index].copy(),
            jacobian=self.jacobian[index].copy(),
        )

    def replace(self, **changes) -> "BatchEvaluation":
        """Return a copy with some fields replaced (used for corrupted controls)."""
        return replace(self, **changes)


@dataclass(frozen=True)
class ContactMap:
    """A contactomorphism given by a word of flow atoms.

    The empty word is the identity map.

    :param word: atoms, applied first to last
    :param n: half dimension
    :param periodic_z: True for R^{2n} x S^1
    :param settings: integrator settings used by every evaluation
    :param name: label used in logs and reports
    """

    word: Tuple[Atom, ...]
    n: int
    periodic_z: bool = False
    settings: IntegratorSettings = field(default_factory=IntegratorSettings)
    name: str = "map"

    def __post_init__(self):
        """Validate the word."""
        object.__setattr__(self, "word", tuple(self.word))
        for atom in self.word:
            if atom.hamiltonian.n != self.n:
                raise ValidationError(
                    f"Atom {atom.hamiltonian!r} has n={atom.hamiltonian.n}, map has n={self.n}."
                )
            if self.periodic_z and not atom.hamiltonian.z_periodic:
                raise ValidationError(
                    f"Atom {atom.hamiltonian!r} is not 1-periodic in z "
                    "and cannot act on R^2n x S^1."
                )

    @classmethod
    def identity(
        cls, n: int, periodic_z: bool = False, settings: Optional[IntegratorSettings] = None
    ) -> "ContactMap":
        """Return the identity map."""
        return cls((), n, periodic_z, settings or IntegratorSettings(), name="identity")

    @property
    def dim(self) -> int:
        """Return 2n+1."""
        return 2 * self.n + 1

    @property
    def is_identity(self) -> bool:
        """Return True for the empty word."""
        return len(self.word) == 0

    @property
    def hamiltonians(self) -> Tuple[Hamiltonian, ...]:
        """Return the distinct Hamiltonians of the word."""
        seen = []
        for atom in self.word:
            if not any(atom.hamiltonian is other for other in seen):
                seen.append(atom.hamiltonian)
        return tuple(seen)

    @property
    def bounded_support(self) -> bool:
        """Return True when the map is supported in a bounded planar region."""
        return not self.is_identity and not any(
            ham.support.everywhere for ham in self.hamiltonians
        )

    @property
    def z_independent(self) -> bool:
        """Return True when every Hamiltonian of the word is z independent."""
        return all(ham.z_independent for ham in self.hamiltonians)

    @property
    def positive(self) -> bool:
        """Return True when the word is a nonempty product of positive flows."""
        return not self.is_identity and all(
            atom.hamiltonian.positive and atom.exponent == 1 and atom.t1 > atom.t0
            for atom in self.word
        )

    def support_sigma(self, points) -> np.ndarray:
        """Return min over the word of the support form; < 1 means inside.

        Supports that cover everything give -inf, the identity +inf.
        """
        points = as_batch(points)
        sigma = np.full(points.shape[0], np.inf)
        for ham in self.hamiltonians:
            if ham.support.everywhere:
                return np.full(points.shape[0], -np.inf)
            sigma = np.minimum(sigma, ham.support.sigma(points))
        return sigma

    def in_interior(self, points) -> np.ndarray:
        """Return a mask of points in the open interior of the support."""
        return self.support_sigma(points) < 1.0

    def in_closure(self, points) -> np.ndarray:
        """Return a mask of points in the closure of the support."""
        return self.support_sigma(points) <= 1.0

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        """Return the planar bounding box of the support.

        Maps without bounded support use the unit box.
        """
        if not self.bounded_support:
            unit = np.ones(2 * self.n)
            return -unit, unit
        lows, highs = zip(*(ham.support.bounding_box(self.n) for ham in self.hamiltonians))
        return np.min(lows, axis=0), np.max(highs, axis=0)

    def with_settings(self, settings: IntegratorSettings) -> "ContactMap":
        """Return the same map evaluated with other integrator settings."""
        return replace(self, settings=settings)

    def __repr__(self):
        """Return a compact representation."""
        kind = "S1" if self.periodic_z else "R"
        return f"ContactMap({self.name!r}, n={self.n}, atoms={len(self.word)}, {kind})"


def evaluate_batch(m: ContactMap, points, variational: bool = True) -> BatchEvaluation:
    """Evaluate ``m`` on a batch of points.

    :param m: contact map
    :param points: ContactPoint, list of ContactPoints or (M, 2n+1) array
    :param variational: also compute grad g and the Jacobian
    """
    start = as_batch(points)
    if start.shape[1] != m.dim:
        raise ValidationError(f"Expected points of dimension {m.dim}, got {start.shape[1]}.")

    count = start.shape[0]
    images = start.copy()
    g = np.zeros(count)
    grad_g = np.zeros((count, m.dim)) if variational else None
    jacobian = np.tile(np.eye(m.dim), (count, 1, 1)) if variational else None

    for atom in m.word:
        t0, t1 = atom.span
        step = flow_batch(atom.hamiltonian, images, t0, t1, m.settings, variational)
        g = g + step.g
        if variational:
            grad_g = grad_g + np.einsum("mji,mj->mi", jacobian, step.grad_g)
            jacobian = np.matmul(step.jacobian, jacobian)
        images = step.points

    return BatchEvaluation(start, images, g, grad_g, jacobian)


def evaluate(m: ContactMap, q: ContactPoint) -> MapEvaluation:
    """Return image, g, grad g and Jacobian of ``m`` at ``q``."""
    periodic_z = q.periodic_z if isinstance(q, ContactPoint) else m.periodic_z
    return evaluate_batch(m, q).item(0, periodic_z=periodic_z)


@positive_int("k")
def iterate(m: ContactMap, k: int) -> ContactMap:
    """Return the k-th iterate of ``m`` (its word repeated k times)."""
    if k == 1:
        return m
    return replace(m, word=m.word * k, name=f"{m.name}^{k}")


def inverse(m: ContactMap) -> ContactMap:
    """Return the inverse map (reversed word, flipped exponents)."""
    if m.is_identity:
        return m
    name = m.name[:-3] if m.name.endswith("^-1") else f"{m.name}^-1"
    return replace(m, word=tuple(atom.inverted() for atom in reversed(m.word)), name=name)


def compose(second: ContactMap, first: ContactMap) -> ContactMap:
    """Return ``second`` after ``first``."""
    if second.n != first.n or second.periodic_z != first.periodic_z:
        raise ValidationError(f"Cannot compose {second!r} with {first!r}.")
    return replace(
        first, word=first.word + second.word, name=f"{second.name}*{first.name}"
    )
