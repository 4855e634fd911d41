""".. Ignore pydocstyle D400.

=============
Damped Newton
=============

Batched damped Gauss-Newton solver for square (or rank deficient) systems
r(u) = 0. Each iteration takes the pseudo-inverse step, caps its length
and backtracks until the Armijo condition on |r|^2 holds. All seeds of a
batch advance together; seeds leave the batch when they converge or stall.

.. autoclass:: NewtonSettings
    :members:

.. autoclass:: NewtonResult
    :members:

.. autofunction:: damped_newton

.. autofunction:: multistart_newton

"""

import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from contactlab.constants import (
    ARMIJO_C,
    DEFAULT_NEWTON_TOL,
    NEWTON_MAX_BACKTRACKS,
    NEWTON_MAX_ITER,
    NEWTON_MAX_STEP,
    PINV_RCOND,
    SEED_CHUNK_SIZE,
)
from contactlab.exceptions import ValidationError
from contactlab.utils.progress import progress_bar

logger = logging.getLogger(__name__)

CONVERGED = "converged"
STALLED = "stalled"
MAX_ITER = "max_iter"
_ACTIVE = ""

# fn(points, with_jacobian) -> (residuals, jacobians or None)
ResidualFunction = Callable[[np.ndarray, bool], Tuple[np.ndarray, Optional[np.ndarray]]]


@dataclass(frozen=True)
class NewtonSettings:
    """Settings of the damped Newton solver."""

    tol: float = DEFAULT_NEWTON_TOL
    max_iter: int = NEWTON_MAX_ITER
    max_backtracks: int = NEWTON_MAX_BACKTRACKS
    armijo: float = ARMIJO_C
    max_step: float = NEWTON_MAX_STEP
    rcond: float = PINV_RCOND

    def __post_init__(self):
        """Validate settings."""
        for name in ("tol", "armijo", "max_step", "rcond"):
            value = getattr(self, name)
            if not value > 0:
                raise ValidationError(f"Newton {name} must be positive, got {value!r}.")
        for name in ("max_iter", "max_backtracks"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValidationError(f"Newton {name} must be a positive integer, got {value!r}.")


@dataclass(frozen=True)
class NewtonResult:
    """Outcome of a batch of Newton solves, one row per seed."""

    seeds: np.ndarray
    points: np.ndarray
    residuals: np.ndarray
    residual_norm: np.ndarray
    status: np.ndarray
    iterations: np.ndarray

    def __len__(self):
        """Return the number of seeds."""
        return self.points.shape[0]

    @property
    def converged(self) -> np.ndarray:
        """Return a mask of converged seeds."""
        return self.status == CONVERGED

    @classmethod
    def concatenate(cls, results) -> "NewtonResult":
        """Join results of consecutive seed chunks."""
        return cls(
            *(
                np.concatenate([getattr(result, name) for result in results])
                for name in (
                    "seeds",
                    "points",
                    "residuals",
                    "residual_norm",
                    "status",
                    "iterations",
                )
            )
        )


def damped_newton(
    fn: ResidualFunction, seeds: np.ndarray, settings: Optional[NewtonSettings] = None
) -> NewtonResult:
    """Solve fn(u) = 0 from every seed.

    :param fn: batched residual function ``fn(points, with_jacobian)``
    :param seeds: (M, d) start points
    :param settings: solver settings
    """
    settings = settings or NewtonSettings()
    seeds = np.atleast_2d(np.asarray(seeds, dtype=float))
    x = seeds.copy()
    count = x.shape[0]
    status = np.full(count, _ACTIVE, dtype=object)
    iterations = np.zeros(count, dtype=int)

    r, jac = fn(x, True)
    norm = np.linalg.norm(r, axis=1)

    for _ in range(settings.max_iter):
        status[(status == _ACTIVE) & (norm <= settings.tol)] = CONVERGED
        active = np.flatnonzero(status == _ACTIVE)
        if active.size == 0:
            break
        iterations[active] += 1

        step = -np.einsum(
            "mij,mj->mi", np.linalg.pinv(jac[active], rcond=settings.rcond), r[active]
        )
        longest = np.abs(step).max(axis=1)
        scale = np.minimum(1.0, settings.max_step / np.maximum(longest, np.finfo(float).tiny))
        step *= scale[:, None]

        cost = norm[active] ** 2
        slope = 2.0 * np.einsum("mi,mi->m", r[active], np.einsum("mij,mj->mi", jac[active], step))
        descent = (slope < 0) & (longest > 0)

        lam = np.ones(active.size)
        accepted = np.zeros(active.size, dtype=bool)
        pending = descent.copy()
        for _ in range(settings.max_backtracks):
            idx = np.flatnonzero(pending)
            if idx.size == 0:
                break
            trial = x[active[idx]] + lam[idx, None] * step[idx]
            trial_r, _ = fn(trial, False)
            trial_cost = np.sum(trial_r**2, axis=1)
            ok = trial_cost <= cost[idx] + settings.armijo * lam[idx] * slope[idx]
            accepted[idx[ok]] = True
            pending[idx[ok]] = False
            lam[idx[~ok]] *= 0.5

        status[active[~accepted]] = STALLED
        moved = active[accepted]
        if moved.size:
            x[moved] += lam[accepted, None] * step[accepted]
            r[moved], jac[moved] = fn(x[moved], True)
            norm[moved] = np.linalg.norm(r[moved], axis=1)
    else:
        status[(status == _ACTIVE) & (norm <= settings.tol)] = CONVERGED

    status[status == _ACTIVE] = MAX_ITER
    return NewtonResult(seeds, x, r, norm, status.astype(str), iterations)


def multistart_newton(
    fn: ResidualFunction,
    seeds: np.ndarray,
    settings: Optional[NewtonSettings] = None,
    workers: int = 1,
    chunk_size: int = SEED_CHUNK_SIZE,
    desc: str = "Newton",
    progress: bool = False,
    progress_callable=None,
) -> NewtonResult:
    """Run :func:`damped_newton` on seed chunks, concurrently if ``workers > 1``.

    Results are returned in seed order regardless of completion order.
    """
    seeds = np.atleast_2d(np.asarray(seeds, dtype=float))
    chunks = [seeds[i : i + chunk_size] for i in range(0, seeds.shape[0], chunk_size)]
    if not chunks:
        empty = np.empty((0, seeds.shape[1]))
        return NewtonResult(
            empty, empty, empty, np.empty(0), np.empty(0, dtype=str), np.empty(0, dtype=int)
        )

    results = []
    with progress_bar(len(chunks), desc, show=progress, callable=progress_callable) as bar:

        def solve(chunk):
            result = damped_newton(fn, chunk, settings)
            logger.debug(
                "%s: %d/%d seeds converged in chunk", desc, result.converged.sum(), len(result)
            )
            bar.update()
            return result

        if workers > 1:
            # Each chunk runs in a copy of the submitting log context.
            with ThreadPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(contextvars.copy_context().run, solve, chunk)
                    for chunk in chunks
                ]
                results = [future.result() for future in futures]
        else:
            results = [solve(chunk) for chunk in chunks]

    return NewtonResult.concatenate(results)
