""".. Ignore pydocstyle D400.

============
Hamiltonians
============

Closed-form contact Hamiltonians with analytic first and second
derivatives. Every Hamiltonian is evaluated on batches of points, an
``(M, 2n+1)`` array with columns ``(x_1..x_n, y_1..y_n, z)``.

.. autoclass:: Hamiltonian
    :members:

.. autoclass:: TwistHamiltonian
    :members:

.. autoclass:: ConstantHamiltonian
    :members:

"""

import abc
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from contactlab.exceptions import ValidationError
from contactlab.utils.decorators import finite_output

TWO_PI = 2.0 * math.pi


class HamiltonianValues(NamedTuple):
    """H, its gradient and (optionally) its Hessian on a batch of points."""

    value: np.ndarray
    gradient: np.ndarray
    hessian: Optional[np.ndarray]


class Profile(abc.ABC):
    """Radial profile h(s), identically zero for s >= 1."""

    name = None

    def __init__(self, amplitude: float):
        """Initialize the profile with its value scale."""
        self.amplitude = float(amplitude)

    @abc.abstractmethod
    def _shape(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return f(u), f'(u), f''(u) for u = 1 - s in (0, 1]."""

    def evaluate(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return h(s), h'(s), h''(s)."""
        s = np.asarray(s, dtype=float)
        inside = s < 1.0
        u = np.where(inside, 1.0 - s, 0.0)
        f, df, d2f = self._shape(u)
        c = self.amplitude
        # d/ds = -d/du
        return (
            np.where(inside, c * f, 0.0),
            np.where(inside, -c * df, 0.0),
            np.where(inside, c * d2f, 0.0),
        )

    @property
    def params(self) -> Dict[str, float]:
        """Return profile parameters."""
        return {"profile": self.name, "amplitude": self.amplitude}

    def __repr__(self):
        """Return a compact representation."""
        return f"{self.__class__.__name__}({self.amplitude!r})"


class QuadraticProfile(Profile):
    """h(s) = c (1 - s)^2. Only C^1 at the boundary."""

    name = "quadratic"

    def _shape(self, u):
        return u**2, 2.0 * u, np.full_like(u, 2.0)


class CubicProfile(Profile):
    """h(s) = c (1 - s)^3, C^2 at the boundary."""

    name = "cubic"

    def _shape(self, u):
        return u**3, 3.0 * u**2, 6.0 * u


class PlateauProfile(Profile):
    """h(s) = c on s <= s0, then a quintic smoothstep down to 0 at s = 1."""

    name = "plateau"

    def __init__(self, amplitude: float, s0: float = 0.5):
        """Initialize the profile."""
        super().__init__(amplitude)
        if not 0.0 <= s0 < 1.0:
            raise ValidationError(f"Plateau radius s0 must lie in [0, 1), got {s0}.")
        self.s0 = float(s0)

    def _shape(self, u):
        width = 1.0 - self.s0
        v = np.clip(u / width, 0.0, 1.0)
        ramp = (u < width).astype(float)
        f = v**3 * (10.0 - 15.0 * v + 6.0 * v**2)
        df = ramp * 30.0 * v**2 * (1.0 - v) ** 2 / width
        d2f = ramp * 60.0 * v * (1.0 - v) * (1.0 - 2.0 * v) / width**2
        return f, df, d2f

    @property
    def params(self):
        """Return profile parameters."""
        return {**super().params, "s0": self.s0}


PROFILES = {
    QuadraticProfile.name: QuadraticProfile,
    CubicProfile.name: CubicProfile,
    PlateauProfile.name: PlateauProfile,
}


@dataclass(frozen=True)
class Support:
    """Cylindrical support {a |x|^2 + b |y|^2 < 1} x (all z).

    ``a = b = 0`` describes a Hamiltonian supported everywhere.
    """

    a: float = 1.0
    b: float = 1.0

    @property
    def everywhere(self) -> bool:
        """Return True when the support is the whole space."""
        return self.a == 0.0 and self.b == 0.0

    def sigma(self, points: np.ndarray) -> np.ndarray:
        """Return the quadratic form a |x|^2 + b |y|^2 of each point."""
        n = (points.shape[-1] - 1) // 2
        x = points[..., :n]
        y = points[..., n : 2 * n]
        return self.a * np.sum(x**2, axis=-1) + self.b * np.sum(y**2, axis=-1)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Return a mask of points in the open support."""
        return self.sigma(points) < 1.0

    def bounding_box(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Return lower and upper corners of the planar bounding box."""
        with np.errstate(divide="ignore"):
            rx = np.inf if self.a == 0 else 1.0 / math.sqrt(self.a)
            ry = np.inf if self.b == 0 else 1.0 / math.sqrt(self.b)
        hi = np.array([rx] * n + [ry] * n)
        return -hi, hi

    def sample_interior(self, rng: np.random.Generator, count: int, n: int, scale=1.0):
        """Sample planar points with sigma uniformly spread in [0, scale^2).

        Supports that cover everything are sampled from the box [-2, 2].
        """
        if self.everywhere:
            return rng.uniform(-2.0, 2.0, size=(count, 2 * n))
        w = rng.normal(size=(count, 2 * n))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        w *= scale * np.sqrt(rng.uniform(0.0, 1.0, size=(count, 1)))
        w[:, :n] /= math.sqrt(self.a) if self.a > 0 else 1.0
        w[:, n:] /= math.sqrt(self.b) if self.b > 0 else 1.0
        return w


class Hamiltonian(abc.ABC):
    """A time-dependent contact Hamiltonian H(x, y, z, t).

    Subclasses implement :meth:`_evaluate`; public evaluation is checked for
    finiteness and raises :class:`~contactlab.exceptions.EvaluationError`.
    Inner loops that check their own state use :meth:`evaluate_unchecked`.

    :param n: half dimension, points live in R^{2n+1}
    """

    family = None

    def __init__(self, n: int, support: Support):
        """Initialize attributes."""
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"Dimension n must be a positive integer, got {n!r}.")
        self.n = n
        self.support = support

    @property
    def dim(self) -> int:
        """Return the dimension 2n+1 of the ambient space."""
        return 2 * self.n + 1

    @property
    @abc.abstractmethod
    def params(self) -> Dict:
        """Return family parameters."""

    @property
    @abc.abstractmethod
    def positive(self) -> bool:
        """Return True when H > 0 on the interior of its support."""

    @property
    def time_dependent(self) -> bool:
        """Return True when H depends on t."""
        return False

    @property
    def z_periodic(self) -> bool:
        """Return True when H(x, y, z+1, t) = H(x, y, z, t)."""
        return True

    @property
    def z_independent(self) -> bool:
        """Return True when H does not depend on z."""
        return True

    @abc.abstractmethod
    def _evaluate(self, points: np.ndarray, t: float, order: int) -> HamiltonianValues:
        """Evaluate on a batch of points inside the support."""

    @finite_output
    def evaluate(self, points, t: float = 0.0, order: int = 2) -> HamiltonianValues:
        """Return H and its derivatives up to ``order`` (1 or 2) at ``points``."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[-1] != self.dim:
            raise ValidationError(
                f"Expected points of dimension {self.dim}, got {points.shape[-1]}."
            )
        return self._evaluate(points, float(t), order)

    def evaluate_unchecked(self, points: np.ndarray, t: float, order: int) -> HamiltonianValues:
        """Evaluate a float batch of the right dimension without any checks."""
        return self._evaluate(points, t, order)

    def value(self, points, t: float = 0.0) -> np.ndarray:
        """Return H at ``points``."""
        return self.evaluate(points, t, order=1).value

    def gradient(self, points, t: float = 0.0) -> np.ndarray:
        """Return (H_x, H_y, H_z) at ``points``."""
        return self.evaluate(points, t, order=1).gradient

    def hessian(self, points, t: float = 0.0) -> np.ndarray:
        """Return the Hessian of H at ``points``."""
        return self.evaluate(points, t, order=2).hessian

    def __repr__(self):
        """Return family name and parameters."""
        params = ", ".join(f"{key}={value!r}" for key, value in self.params.items())
        return f"{self.__class__.__name__}({params})"


class ConstantHamiltonian(Hamiltonian):
    """H = c everywhere; its flow is the Reeb flow scaled by c."""

    family = "constant"

    def __init__(self, n: int, amplitude: float):
        """Initialize attributes."""
        super().__init__(n, Support(0.0, 0.0))
        self.amplitude = float(amplitude)

    @property
    def params(self):
        """Return family parameters."""
        return {"n": self.n, "amplitude": self.amplitude}

    @property
    def positive(self):
        """Return True for a positive constant."""
        return self.amplitude > 0

    def _evaluate(self, points, t, order):
        m = points.shape[0]
        return HamiltonianValues(
            np.full(m, self.amplitude),
            np.zeros((m, self.dim)),
            np.zeros((m, self.dim, self.dim)) if order >= 2 else None,
        )


class TwistHamiltonian(Hamiltonian):
    """Twist Hamiltonian H = h(sigma) (1 + tilt x_1) (1 + eps sin 2 pi w z) (1 + mu sin 2 pi t).

    Here sigma = a |x|^2 + b |y|^2 and h is a profile vanishing for
    sigma >= 1. All catalog families are special cases. H is 1-periodic in
    z when eps = 0 or the z frequency w is an integer.

    :param n: half dimension
    :param profile: radial profile
    :param a: x weight of sigma
    :param b: y weight of sigma
    :param epsilon: z modulation, |epsilon| < 1
    :param tilt: x_1 modulation, |tilt| < sqrt(a)
    :param modulation: time modulation, |modulation| < 1
    :param frequency: z frequency w of the z modulation
    """

    family = "twist"

    def __init__(
        self,
        n: int,
        profile: Profile,
        a: float = 1.0,
        b: float = 1.0,
        epsilon: float = 0.0,
        tilt: float = 0.0,
        modulation: float = 0.0,
        frequency: float = 1.0,
    ):
        """Initialize attributes."""
        if a <= 0 or b <= 0:
            raise ValidationError(f"Weights a and b must be positive, got a={a}, b={b}.")
        if abs(epsilon) >= 1:
            raise ValidationError(
                f"|epsilon| must be < 1 (epsilon={epsilon} breaks positivity)."
            )
        if not frequency > 0:
            raise ValidationError(f"z frequency must be positive, got {frequency}.")
        if abs(tilt) >= math.sqrt(a):
            raise ValidationError(
                f"|tilt| must be < sqrt(a) (tilt={tilt} breaks positivity)."
            )
        if abs(modulation) >= 1:
            raise ValidationError(
                f"|modulation| must be < 1 (modulation={modulation} breaks positivity)."
            )
        super().__init__(n, Support(float(a), float(b)))
        self.profile = profile
        self.a = float(a)
        self.b = float(b)
        self.epsilon = float(epsilon)
        self.tilt = float(tilt)
        self.modulation = float(modulation)
        self.frequency = float(frequency)

    @property
    def params(self):
        """Return family parameters."""
        return {
            "n": self.n,
            **self.profile.params,
            "a": self.a,
            "b": self.b,
            "epsilon": self.epsilon,
            "frequency": self.frequency,
            "tilt": self.tilt,
            "modulation": self.modulation,
        }

    @property
    def positive(self):
        """Return True when H > 0 on the interior of the support."""
        return self.profile.amplitude > 0

    @property
    def time_dependent(self):
        """Return True when the time modulation is switched on."""
        return self.modulation != 0.0

    @property
    def z_independent(self):
        """Return True when the z modulation is switched off."""
        return self.epsilon == 0.0

    @property
    def z_periodic(self):
        """Return True when H is 1-periodic in z."""
        return self.z_independent or self.frequency.is_integer()

    def _evaluate(self, points, t, order):
        n, dim = self.n, self.dim
        m = points.shape[0]
        x = points[:, :n]
        y = points[:, n : 2 * n]
        z = points[:, 2 * n]

        sigma = self.a * np.sum(x**2, axis=1) + self.b * np.sum(y**2, axis=1)
        h, dh, d2h = self.profile.evaluate(sigma)

        dsigma = np.zeros((m, dim))
        dsigma[:, :n] = 2.0 * self.a * x
        dsigma[:, n : 2 * n] = 2.0 * self.b * y

        w = 1.0 + self.tilt * x[:, 0]
        dw = np.zeros(dim)
        dw[0] = self.tilt

        # Planar factor P = h(sigma) w(x_1).
        p = h * w
        dp = (dh * w)[:, None] * dsigma + h[:, None] * dw[None, :]

        omega = TWO_PI * self.frequency
        zf = 1.0 + self.epsilon * np.sin(omega * z)
        dzf = omega * self.epsilon * np.cos(omega * z)
        d2zf = -(omega**2) * self.epsilon * np.sin(omega * z)

        tf = 1.0 + self.modulation * math.sin(TWO_PI * t)

        value = tf * p * zf
        gradient = tf * (zf[:, None] * dp)
        gradient[:, 2 * n] += tf * p * dzf

        hessian = None
        if order >= 2:
            hsigma = np.zeros(dim)
            hsigma[:n] = 2.0 * self.a
            hsigma[n : 2 * n] = 2.0 * self.b
            d2p = (d2h * w)[:, None, None] * (dsigma[:, :, None] * dsigma[:, None, :])
            d2p += (dh * w)[:, None, None] * np.diag(hsigma)[None, :, :]
            cross = dsigma[:, :, None] * dw[None, None, :]
            d2p += dh[:, None, None] * (cross + np.swapaxes(cross, 1, 2))

            hessian = zf[:, None, None] * d2p
            hessian[:, 2 * n, :] += dzf[:, None] * dp
            hessian[:, :, 2 * n] += dzf[:, None] * dp
            hessian[:, 2 * n, 2 * n] += p * d2zf
            hessian *= tf

        return HamiltonianValues(value, gradient, hessian)


def check_hamiltonian(
    hamiltonian: Hamiltonian, rng: np.random.Generator, samples: int = 200
) -> List[str]:
    """Run the sampled support, periodicity and positivity checks.

    :return: list of human readable violations (empty if all checks pass)
    """
    n = hamiltonian.n
    violations = []
    t = rng.uniform(0.0, 1.0)
    z = rng.uniform(-2.0, 2.0, size=(samples, 1))

    if not hamiltonian.support.everywhere:
        planar = hamiltonian.support.sample_interior(rng, samples, n)
        sigma = hamiltonian.support.sigma(np.hstack([planar, z]))
        # Push the samples radially outside the support.
        factor = np.sqrt(rng.uniform(1.0 + 1e-9, 4.0, size=(samples, 1)))
        outside = np.hstack([planar / np.sqrt(sigma)[:, None] * factor, z])
        values = hamiltonian.evaluate(outside, t)
        worst = max(
            np.abs(values.value).max(),
            np.abs(values.gradient).max(),
            np.abs(values.hessian).max(),
        )
        if worst != 0.0:
            violations.append(f"H or its derivatives do not vanish outside support ({worst:.3e})")

    inside = np.hstack([hamiltonian.support.sample_interior(rng, samples, n, 0.999), z])
    if hamiltonian.z_periodic:
        shifted = inside.copy()
        shifted[:, -1] += 1.0
        defect = np.abs(hamiltonian.value(shifted, t) - hamiltonian.value(inside, t)).max()
        if defect > 1e-12:
            violations.append(f"H is not 1-periodic in z ({defect:.3e})")

    if hamiltonian.positive:
        lowest = hamiltonian.value(inside, t).min()
        if lowest <= 0:
            violations.append(f"H is not positive inside its support (min {lowest:.3e})")

    return violations
