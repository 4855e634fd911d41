"""
Unit tests for contactlab/translated/newton.py file.
"""

import unittest

import numpy as np
from mock import MagicMock

from contactlab.contactlab_logger import current_context, log_context
from contactlab.exceptions import ValidationError
from contactlab.translated.newton import (
    CONVERGED,
    MAX_ITER,
    STALLED,
    NewtonSettings,
    damped_newton,
    multistart_newton,
)

TARGET = np.array([1.0, 4.0])


def squares(points, with_jacobian):
    """r(u) = u^2 - (1, 4) with roots (+-1, +-2)."""
    residuals = points**2 - TARGET
    jacobians = None
    if with_jacobian:
        jacobians = np.zeros((points.shape[0], 2, 2))
        jacobians[:, 0, 0] = 2 * points[:, 0]
        jacobians[:, 1, 1] = 2 * points[:, 1]
    return residuals, jacobians


def no_root(points, with_jacobian):
    """r(u) = u^2 + 1 has no real root; the minimum of |r| is at u = 0."""
    residuals = points**2 + 1.0
    jacobians = (2 * points)[:, :, None] if with_jacobian else None
    return residuals, jacobians


class TestNewtonSettings(unittest.TestCase):
    def test_validation(self):
        for kwargs in [{"tol": 0.0}, {"max_step": -1.0}, {"max_iter": 0}, {"max_iter": True}]:
            with self.assertRaises(ValidationError):
                NewtonSettings(**kwargs)


class TestDampedNewton(unittest.TestCase):
    def test_converges(self):
        seeds = np.array([[3.0, 3.0], [0.5, -0.5], [-2.0, 1.5]])
        result = damped_newton(squares, seeds)
        np.testing.assert_array_equal(result.status, [CONVERGED] * 3)
        np.testing.assert_allclose(np.abs(result.points), np.tile([1.0, 2.0], (3, 1)), atol=1e-9)
        np.testing.assert_allclose(np.sign(result.points), np.sign(seeds))
        self.assertTrue(np.all(result.residual_norm <= 1e-9))
        np.testing.assert_array_equal(result.seeds, seeds)
        self.assertEqual(len(result), 3)
        self.assertTrue(np.all(result.converged))

    def test_step_is_capped(self):
        settings = NewtonSettings(max_iter=1, max_step=0.25)
        result = damped_newton(squares, np.array([[10.0, 10.0]]), settings)
        self.assertEqual(result.status[0], MAX_ITER)
        np.testing.assert_allclose(np.abs(result.points[0] - 10.0).max(), 0.25)
        self.assertEqual(result.iterations[0], 1)

    def test_seed_at_solution(self):
        result = damped_newton(squares, np.array([[1.0, 2.0]]))
        self.assertEqual(result.status[0], CONVERGED)
        self.assertEqual(result.iterations[0], 0)

    def test_no_root(self):
        result = damped_newton(no_root, np.array([[0.0], [1.0]]))
        self.assertFalse(np.any(result.converged))
        self.assertEqual(result.status[0], STALLED)
        self.assertIn(result.status[1], (STALLED, MAX_ITER))
        self.assertTrue(np.all(result.residual_norm >= 1.0))


class TestMultistartNewton(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(0)
        self.seeds = rng.uniform(0.5, 3.0, size=(25, 2)) * rng.choice([-1, 1], size=(25, 2))

    def test_chunks_keep_seed_order(self):
        single = damped_newton(squares, self.seeds)
        for workers in [1, 3]:
            result = multistart_newton(squares, self.seeds, workers=workers, chunk_size=4)
            np.testing.assert_array_equal(result.seeds, self.seeds)
            np.testing.assert_allclose(result.points, single.points)
            np.testing.assert_array_equal(result.status, single.status)

    def test_workers_inherit_log_context(self):
        contexts = []

        def recording(points, with_jacobian):
            contexts.append(current_context())
            return squares(points, with_jacobian)

        with log_context(run="3f2a9c1e", k=2):
            multistart_newton(recording, self.seeds, workers=3, chunk_size=4)
        self.assertTrue(contexts)
        for context in contexts:
            self.assertEqual(context, {"run": "3f2a9c1e", "k": 2})

    def test_progress_callable(self):
        callable_mock = MagicMock()
        multistart_newton(squares, self.seeds, chunk_size=10, progress_callable=callable_mock)
        self.assertEqual(callable_mock.call_count, 3)
        self.assertAlmostEqual(callable_mock.call_args[0][0], 1.0)

    def test_no_seeds(self):
        result = multistart_newton(squares, np.empty((0, 2)))
        self.assertEqual(len(result), 0)
        self.assertEqual(result.points.shape, (0, 2))
