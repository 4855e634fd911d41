"""Points, contact form and Reeb flow of (R^{2n+1}, dz - y dx)."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from contactlab.exceptions import ValidationError

ArrayLike = Union[np.ndarray, list, tuple]


@dataclass(frozen=True, eq=False)
class ContactPoint:
    """A point (x, y, z) of R^{2n+1} or R^{2n} x S^1.

    ``z`` is always stored as a real lift; with ``periodic_z`` geometric
    comparisons take it modulo 1.
    """

    x: np.ndarray
    y: np.ndarray
    z: float
    periodic_z: bool = False

    def __post_init__(self):
        """Normalize coordinates and validate them."""
        x = np.atleast_1d(np.asarray(self.x, dtype=float)).copy()
        y = np.atleast_1d(np.asarray(self.y, dtype=float)).copy()
        if x.ndim != 1 or x.shape != y.shape:
            raise ValidationError(
                f"x and y must be vectors of equal length, got {x.shape} and {y.shape}"
            )
        z = float(self.z)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y)) and np.isfinite(z)):
            raise ValidationError("Contact point coordinates must be finite.")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "periodic_z", bool(self.periodic_z))

    @property
    def n(self) -> int:
        """Half the dimension of the contact distribution."""
        return self.x.shape[0]

    @classmethod
    def from_array(cls, u: ArrayLike, periodic_z: bool = False) -> "ContactPoint":
        """Build a point from a flat (x, y, z) vector of length 2n+1."""
        u = np.asarray(u, dtype=float)
        if u.ndim != 1 or u.shape[0] % 2 != 1:
            raise ValidationError(f"Expected a vector of odd length, got {u.shape}")
        n = (u.shape[0] - 1) // 2
        return cls(u[:n], u[n : 2 * n], u[2 * n], periodic_z=periodic_z)

    def as_array(self) -> np.ndarray:
        """Return the flat (x, y, z) vector."""
        return np.concatenate([self.x, self.y, [self.z]])

    def distance(self, other: "ContactPoint") -> float:
        """Return the geometric (max-norm) distance to ``other``."""
        return float(
            geometric_distance(
                self.as_array()[None, :], other.as_array()[None, :], self.periodic_z
            )[0]
        )

    def is_close(self, other: "ContactPoint", tol: float) -> bool:
        """Return True when both points coincide geometrically within ``tol``."""
        return self.distance(other) <= tol

    def __eq__(self, other):
        """Compare coordinates exactly (z as real lift)."""
        if not isinstance(other, ContactPoint):
            return NotImplemented
        return self.periodic_z == other.periodic_z and np.array_equal(
            self.as_array(), other.as_array()
        )

    def __hash__(self):
        """Hash the coordinates."""
        return hash((tuple(self.as_array()), self.periodic_z))

    def __repr__(self):
        """Return a compact representation."""
        kind = "S1" if self.periodic_z else "R"
        return (
            f"ContactPoint(x={self.x.tolist()}, y={self.y.tolist()}, "
            f"z={self.z!r}, {kind})"
        )


def split(u: np.ndarray):
    """Split a (..., 2n+1) array into its x, y and z parts."""
    n = (u.shape[-1] - 1) // 2
    return u[..., :n], u[..., n : 2 * n], u[..., 2 * n]


def as_batch(points) -> np.ndarray:
    """Return points as an (M, 2n+1) float array.

    Accepts a ContactPoint, a sequence of ContactPoints or an array.
    """
    if isinstance(points, ContactPoint):
        return points.as_array()[None, :]
    if isinstance(points, (list, tuple)) and points and isinstance(points[0], ContactPoint):
        return np.stack([p.as_array() for p in points])
    return np.atleast_2d(np.asarray(points, dtype=float))


def z_distance(dz: np.ndarray, periodic_z: bool) -> np.ndarray:
    """Distance between z lifts: |dz| on R, distance mod 1 on S^1."""
    dz = np.abs(dz)
    if periodic_z:
        dz = np.mod(dz, 1.0)
        dz = np.minimum(dz, 1.0 - dz)
    return dz


def geometric_distance(u: np.ndarray, v: np.ndarray, periodic_z: bool) -> np.ndarray:
    """Row-wise max(|dx|, |dy|, dist_z(dz)) between two (M, 2n+1) arrays."""
    diff = np.abs(u[:, :-1] - v[:, :-1])
    planar = diff.max(axis=1) if diff.shape[1] else np.zeros(u.shape[0])
    return np.maximum(planar, z_distance(u[:, -1] - v[:, -1], periodic_z))


def alpha(points, vectors) -> np.ndarray:
    """Evaluate the contact form dz - y.dx on tangent vectors.

    :param points: base points, (M, 2n+1)
    :param vectors: tangent vectors at those points, (M, 2n+1)
    :return: (M,) values
    """
    u = as_batch(points)
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    _, y, _ = split(u)
    vx, _, vz = split(v)
    return vz - np.einsum("mi,mi->m", y, vx)


def reeb_translate(q: ContactPoint, s: float) -> ContactPoint:
    """Flow ``q`` for time ``s`` along the Reeb field d/dz."""
    return ContactPoint(q.x, q.y, q.z + s, periodic_z=q.periodic_z)
