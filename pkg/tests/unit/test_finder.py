"""
Unit tests for contactlab/translated/finder.py and residual.py files.
"""

import math
import unittest
from dataclasses import replace

import numpy as np

from contactlab.core.geometry import ContactPoint
from contactlab.core.integrator import IntegratorSettings
from contactlab.exceptions import PreconditionError, ValidationError
from contactlab.maps import catalog
from contactlab.maps.catalog import make_family
from contactlab.maps.contactomorphism import ContactMap, evaluate_batch
from contactlab.translated.finder import (
    action_of,
    check_iteration_lemma,
    find_translated_points,
    reverify,
    search_translated_points,
    seed_grid,
)
from contactlab.translated.points import (
    NONE_FOUND,
    ONLY_TRIVIAL,
    SearchSettings,
    SeedStrategy,
)
from contactlab.translated.residual import residual, residual_batch, residual_jacobian

SETTINGS = IntegratorSettings(steps_per_unit=200)


class TestResidual(unittest.TestCase):
    def test_residual(self):
        m = make_family(catalog.Z_PERTURBED_TWIST, settings=SETTINGS)
        points = np.array([[0.2, 0.1, 0.3], [0.4, -0.3, 0.7]])
        batch = residual_batch(m, points)
        evaluation = evaluate_batch(m, points)
        np.testing.assert_allclose(batch.values[:, :2], evaluation.images[:, :2] - points[:, :2])
        np.testing.assert_allclose(batch.values[:, 2], evaluation.g)
        np.testing.assert_allclose(batch.jacobian[:, 2, :], evaluation.grad_g)
        np.testing.assert_allclose(
            batch.jacobian[:, :2, :], evaluation.jacobian[:, :2, :] - np.eye(3)[None, :2, :]
        )

        single = residual(m, ContactPoint.from_array(points[1]))
        np.testing.assert_allclose(single, batch.values[1])
        self.assertEqual(residual_jacobian(m, points[0]).shape, (3, 3))
        self.assertIsNone(residual_batch(m, points, with_jacobian=False).jacobian)

    def test_jacobian_matches_differences(self):
        m = make_family(catalog.Z_PERTURBED_TWIST, settings=SETTINGS)
        q = np.array([0.3, -0.2, 0.45])
        step = 1e-6
        numeric = np.column_stack(
            [
                (residual(m, q + step * e) - residual(m, q - step * e)) / (2 * step)
                for e in np.eye(3)
            ]
        )
        np.testing.assert_allclose(residual_jacobian(m, q), numeric, atol=1e-6)


class TestSeedGrid(unittest.TestCase):
    def test_bounded_support(self):
        m = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        seeds = seed_grid(m, SeedStrategy(resolution=5))
        self.assertEqual(seeds.shape, (9, 3))
        self.assertTrue(np.all(m.in_interior(seeds)))
        np.testing.assert_array_equal(seeds[:, 2], np.zeros(9))

    def test_even_resolution_keeps_centre(self):
        m = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        seeds = seed_grid(m, SeedStrategy(resolution=4))
        # Four interior grid points at +-1/3 and the appended centre.
        self.assertEqual(seeds.shape, (5, 3))
        np.testing.assert_array_equal(seeds[-1], [0.0, 0.0, 0.0])

        m = make_family(catalog.Z_PERTURBED_TWIST, settings=SETTINGS)
        seeds = seed_grid(m, SeedStrategy(resolution=4, z_resolution=2))
        centres = seeds[np.all(seeds[:, :2] == 0.0, axis=1)]
        np.testing.assert_array_equal(centres[:, 2], [0.0, 1.0])

    def test_z_grid(self):
        m = make_family(catalog.Z_PERTURBED_TWIST, periodic_z=True, settings=SETTINGS)
        seeds = seed_grid(m, SeedStrategy(resolution=5))
        self.assertEqual(seeds.shape, (45, 3))
        np.testing.assert_allclose(np.unique(seeds[:, 2]), [0.0, 0.2, 0.4, 0.6, 0.8])

        seeds = seed_grid(m, SeedStrategy(resolution=5, z_resolution=2, z_range=(0.0, 0.5)))
        np.testing.assert_allclose(np.unique(seeds[:, 2]), [0.0, 0.25])

    def test_explicit(self):
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        explicit = np.array([[5.0, 5.0, 5.0]])
        seeds = seed_grid(m, SeedStrategy(resolution=3).with_explicit(explicit))
        self.assertEqual(seeds.shape, (10, 3))
        np.testing.assert_array_equal(seeds[-1], explicit[0])

        seeds = seed_grid(m, SeedStrategy(explicit=explicit, grid=False))
        np.testing.assert_array_equal(seeds, explicit)

        with self.assertRaises(ValidationError):
            seed_grid(m, SeedStrategy(explicit=np.zeros((1, 5)), grid=False))

    def test_strategy_validation(self):
        with self.assertRaises(ValidationError):
            SeedStrategy(resolution=1)
        with self.assertRaises(ValidationError):
            SeedStrategy(z_resolution=0)
        with self.assertRaises(ValidationError):
            SeedStrategy(z_range=(1.0, 0.0))
        with self.assertRaises(ValidationError):
            SeedStrategy(grid=False)


class TestSearch(unittest.TestCase):
    def test_reeb_shift(self):
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        result = search_translated_points(m, 2, SeedStrategy(resolution=3))
        self.assertEqual(result.seeds_total, 9)
        self.assertEqual(result.converged, 9)
        self.assertEqual(len(result.points), 9)
        self.assertIsNone(result.diagnostic)
        self.assertFalse(result.identity_like)
        np.testing.assert_allclose(result.actions, np.full(9, 2.0), atol=1e-12)
        for point in result.points:
            self.assertFalse(point.nondegenerate)
            self.assertEqual(point.k, 2)
            self.assertIsNotNone(point.orbit_id)
        self.assertEqual(result.trivial, [])

    def test_identity(self):
        m = ContactMap.identity(1, settings=SETTINGS)
        result = search_translated_points(m, 1, SeedStrategy(resolution=3))
        self.assertEqual(result.points, [])
        self.assertEqual(len(result.trivial), 9)
        self.assertEqual(result.diagnostic, ONLY_TRIVIAL)
        self.assertTrue(result.identity_like)
        self.assertEqual(result.spectrum, [0.0])

    def test_axis_found_with_even_resolution(self):
        m = make_family(
            catalog.RADIAL_TWIST,
            {"profile": "quadratic", "amplitude": math.pi},
            settings=SETTINGS,
        )
        result = search_translated_points(m, 1, SeedStrategy(resolution=4))
        axis = [p for p in result.points if np.allclose(p.point.as_array()[:2], 0.0)]
        self.assertEqual(len(axis), 1)
        self.assertAlmostEqual(axis[0].action, math.pi, places=8)

    def test_none_found(self):
        m = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        with self.assertLogs("contactlab.translated.finder", level="WARNING"):
            result = search_translated_points(m, 1, np.array([[3.0, 3.0, 0.0]]))
        self.assertEqual(result.diagnostic, NONE_FOUND)
        self.assertEqual(result.seeds_total, 1)
        self.assertEqual(result.converged, 0)
        self.assertEqual(result.spectrum, [])

    def test_fixed_point_at_center(self):
        m = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        points = find_translated_points(m, 1, np.array([[0.05, 0.02, 0.3]]))
        self.assertEqual(len(points), 1)
        np.testing.assert_allclose(points[0].point.as_array()[:2], [0.0, 0.0], atol=1e-8)
        self.assertAlmostEqual(points[0].action, 1.0, places=8)
        self.assertEqual(points[0].g, 0.0)
        self.assertAlmostEqual(points[0].smallest_singular_value, 0.0, places=12)

    def test_invalid(self):
        m = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        with self.assertRaises(ValidationError):
            search_translated_points(m, 0)
        with self.assertRaises(ValidationError):
            find_translated_points(m, 1, tol=0.0)
        with self.assertRaises(ValidationError):
            SearchSettings(geom_tol=0.0)
        with self.assertRaises(ValidationError):
            SearchSettings(workers=0)


class TestActionAndLemma(unittest.TestCase):
    def setUp(self):
        self.shift = make_family(catalog.REEB_SHIFT, {"amplitude": 0.5}, settings=SETTINGS)
        self.twist = make_family(catalog.RADIAL_TWIST, settings=SETTINGS)
        self.q = ContactPoint.from_array([0.3, 0.0, 0.1])

    def test_action_of(self):
        self.assertAlmostEqual(action_of(self.shift, 3, self.q), 1.5, places=12)
        with self.assertRaises(PreconditionError):
            action_of(self.twist, 1, self.q)

    def test_iteration_lemma(self):
        report = check_iteration_lemma(self.shift, self.q, 1, 3)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.derived_point.z, 0.6)
        self.assertEqual(report.cocycle_defect, 0.0)
        data = report.to_dict()
        self.assertEqual(data["point"], [0.3, 0.0, 0.1])
        self.assertTrue(data["passed"])

        with self.assertRaises(ValidationError):
            check_iteration_lemma(self.shift, self.q, 2, 2)
        with self.assertRaises(PreconditionError):
            check_iteration_lemma(self.twist, self.q, 1, 2)

    def test_reverify(self):
        result = search_translated_points(self.shift, 1, np.array([[0.2, 0.2, 0.0]]))
        point = result.points[0]
        self.assertEqual(reverify(self.shift, point, 1e-9), [])
        tampered = replace(point, action=0.75)
        failures = reverify(self.shift, tampered, 1e-9)
        self.assertEqual(len(failures), 1)
        self.assertIn("action", failures[0])
