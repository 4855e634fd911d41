"""
Unit tests for contactlab/translated/census.py file.
"""

import math
import shutil
import tempfile
import unittest

import numpy as np
from mock import patch

from contactlab.core.geometry import ContactPoint
from contactlab.core.integrator import IntegratorSettings
from contactlab.exceptions import IntegrationError, ValidationError
from contactlab.experiments.verify import radial_oracle_actions
from contactlab.maps import catalog
from contactlab.maps.catalog import make_family
from contactlab.maps.contactomorphism import ContactMap, evaluate_batch
from contactlab.translated import census as census_module
from contactlab.translated.census import (
    ON_ERROR_RECORD,
    CensusSettings,
    iterated_census,
)
from contactlab.translated.points import SeedStrategy, TranslatedPoint

SETTINGS = IntegratorSettings(steps_per_unit=200)


def shift_census(K=3, periodic_z=False, **kwargs):
    m = make_family(catalog.REEB_SHIFT, periodic_z=periodic_z, settings=SETTINGS)
    cfg = CensusSettings(seeds=SeedStrategy(resolution=2), orbit_seeds=False, **kwargs)
    return m, iterated_census(m, K, cfg)


class TestCensusSettings(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ValidationError):
            CensusSettings(on_error="ignore")
        with self.assertRaises(ValidationError):
            CensusSettings(integer_tol=0.0)


class TestIteratedCensus(unittest.TestCase):
    def test_reeb_shift_on_r(self):
        _, report = shift_census()
        self.assertEqual(sorted(report.per_k), [1, 2, 3])
        self.assertEqual(report.total_count, 12)
        self.assertEqual(report.distinct_count, 4)
        self.assertEqual(report.cumulative_distinct(), {1: 4, 2: 4, 3: 4})
        for k, actions in report.action_table().items():
            np.testing.assert_allclose(actions, np.full(4, float(k)), atol=1e-12)
        self.assertAlmostEqual(report.max_actions()[3], 3.0)
        self.assertEqual(len(report.points(2)), 4)
        self.assertEqual(report.points(7), [])

        for c in report.clusters:
            self.assertEqual(c.ks, [1, 2, 3])

        self.assertTrue(report.flags["monotone_max_action"])
        self.assertTrue(report.flags["mean_action_rigid"])
        self.assertFalse(report.flags["distinct_growing"])
        self.assertFalse(report.flags["identity_like"])
        self.assertTrue(report.flags["iteration_lemma_closed"])
        # On R the shift moves every point, on S^1 it fixes them.
        self.assertFalse(report.flags["has_periodic_points"])
        self.assertEqual(report.integer_coincidences, [])
        self.assertEqual(report.lemma_skipped, 0)
        # Three pairs of iterates per cluster.
        self.assertEqual(len(report.lemma_checks), 12)

    def test_reeb_shift_on_circle(self):
        m, report = shift_census(periodic_z=True)
        self.assertTrue(report.periodic_z)
        self.assertTrue(report.flags["has_periodic_points"])
        self.assertEqual(len(report.periodic_points), 12)
        self.assertTrue(report.flags["integer_action_coincidence"])
        self.assertEqual(len(report.integer_coincidences), 12)
        self.assertEqual(
            report.integer_envelope()[2], {"ceil_max": 2, "floor_min": 2, "width": 0}
        )
        self.assertEqual(report.reverify(m, 1e-9), [])

    def test_identity(self):
        m = ContactMap.identity(1, settings=SETTINGS)
        cfg = CensusSettings(seeds=SeedStrategy(resolution=2))
        report = iterated_census(m, 2, cfg)
        self.assertTrue(report.flags["identity_like"])
        self.assertFalse(report.flags["monotone_max_action"])
        self.assertEqual(report.distinct_count, 0)
        self.assertEqual(report.max_actions(), {1: None, 2: None})
        self.assertEqual(report.integer_envelope(), {})

    def test_orbit_seeds(self):
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        cfg = CensusSettings(seeds=SeedStrategy(resolution=2), orbit_seeds=True)
        report = iterated_census(m, 2, cfg)
        # Grid seeds plus earlier solutions and their images. The images are
        # Reeb translates of the solutions and seed the same four points.
        self.assertEqual(report.per_k[2].seeds_total, 12)
        self.assertEqual(len(report.points(2)), 4)
        self.assertEqual(report.distinct_count, 4)
        for point in report.points(2):
            self.assertEqual(point.point.z, 0.0)

    def test_errors(self):
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        search = census_module.search_translated_points

        def failing(m, k, *args, **kwargs):
            if k == 2:
                raise IntegrationError("Non-finite flow state", time=0.5)
            return search(m, k, *args, **kwargs)

        with patch.object(census_module, "search_translated_points", side_effect=failing):
            cfg = CensusSettings(seeds=SeedStrategy(resolution=2), on_error=ON_ERROR_RECORD)
            with self.assertLogs("contactlab.translated.census", level="ERROR"):
                report = iterated_census(m, 3, cfg)
            self.assertEqual(sorted(report.per_k), [1, 3])
            self.assertEqual(report.errors, {2: "IntegrationError: Non-finite flow state (t=0.5)"})
            self.assertFalse(report.flags["monotone_max_action"])

            with self.assertRaises(IntegrationError):
                iterated_census(m, 3, CensusSettings(seeds=SeedStrategy(resolution=2)))

    def test_cache(self):
        cache_dir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, cache_dir)
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        cfg = CensusSettings(seeds=SeedStrategy(resolution=2), orbit_seeds=False)
        search = census_module.search_translated_points

        with patch.object(census_module, "search_translated_points", wraps=search) as search_mock:
            first = iterated_census(m, 2, cfg, cache_key="0123456789abcdef", cache_dir=cache_dir)
            self.assertEqual(search_mock.call_count, 2)
            second = iterated_census(m, 2, cfg, cache_key="0123456789abcdef", cache_dir=cache_dir)
            self.assertEqual(search_mock.call_count, 2)
        self.assertEqual(first.action_table(), second.action_table())

    def test_invalid_K(self):
        m = make_family(catalog.REEB_SHIFT, settings=SETTINGS)
        with self.assertRaises(ValidationError):
            iterated_census(m, 0)


class TestRadialCensus(unittest.TestCase):
    def setUp(self):
        self.m = make_family(
            catalog.RADIAL_TWIST,
            {"profile": "quadratic", "amplitude": math.pi},
            settings=IntegratorSettings(steps_per_unit=400),
        )

    def test_axis_is_one_orbit(self):
        seeds = SeedStrategy(explicit=np.zeros((1, 3)), grid=False)
        report = iterated_census(self.m, 2, CensusSettings(seeds=seeds, lemma_checks=False))

        # The seed, the k=1 solution and its image moved back to z = 0.
        self.assertEqual(report.per_k[2].seeds_total, 3)
        self.assertEqual(len(report.points(2)), 1)
        np.testing.assert_array_equal(report.points(2)[0].point.as_array(), [0.0, 0.0, 0.0])
        self.assertAlmostEqual(report.points(2)[0].action, 2 * math.pi, places=8)
        self.assertEqual(len(report.clusters), 1)
        self.assertEqual(report.clusters[0].ks, [1, 2])

    def test_orbit_seeds_keep_z_of_z_dependent_maps(self):
        m = make_family(catalog.Z_PERTURBED_TWIST, settings=SETTINGS)
        found = [
            TranslatedPoint(
                point=ContactPoint.from_array([0.2, 0.1, 0.25]),
                k=1,
                action=0.1,
                residual_norm=0.0,
                nondegenerate=True,
            )
        ]
        seeds = census_module._orbit_seeds(m, found, 0.0)
        image = evaluate_batch(m, np.array([[0.2, 0.1, 0.25]]), variational=False).images[0]
        np.testing.assert_array_equal(seeds, [[0.2, 0.1, 0.25], image])

        seeds = census_module._orbit_seeds(self.m, found, 0.5)
        np.testing.assert_array_equal(seeds[:, 2], [0.5, 0.5])

    def test_oracle_orbit_set(self):
        cfg = CensusSettings(seeds=SeedStrategy(resolution=6), lemma_checks=False)
        report = iterated_census(self.m, 2, cfg)

        for k in [1, 2]:
            oracle = radial_oracle_actions(math.pi, k)
            actions = report.action_table()[k]
            for action in actions:
                self.assertTrue(np.isclose(oracle, action, atol=1e-5).any())
            self.assertAlmostEqual(max(actions), k * math.pi, places=8)
        # Both orbits of phi: the axis and the circle s = 1/2.
        nearest = {
            int(np.argmin(np.abs(np.subtract(radial_oracle_actions(math.pi, 1), a))))
            for a in report.action_table()[1]
        }
        self.assertEqual(nearest, {0, 1})

        # One axis orbit shared by both iterates.
        axis = [
            c for c in report.clusters
            if np.allclose(c.representative.point.as_array()[:2], 0.0, atol=1e-8)
        ]
        self.assertEqual(len(axis), 1)
        self.assertEqual(axis[0].ks, [1, 2])


class TestIntegerEnvelope(unittest.TestCase):
    def test_configured_tolerance(self):
        m = make_family(
            catalog.REEB_SHIFT, {"amplitude": 1.001}, periodic_z=True, settings=SETTINGS
        )
        seeds = SeedStrategy(resolution=2)

        strict = iterated_census(m, 1, CensusSettings(seeds=seeds, orbit_seeds=False))
        self.assertEqual(strict.integer_envelope()[1], {"ceil_max": 2, "floor_min": 1, "width": 1})

        loose = iterated_census(
            m, 1, CensusSettings(seeds=seeds, orbit_seeds=False, integer_tol=0.01)
        )
        self.assertEqual(loose.integer_tol, 0.01)
        self.assertEqual(loose.integer_envelope()[1], {"ceil_max": 1, "floor_min": 1, "width": 0})
