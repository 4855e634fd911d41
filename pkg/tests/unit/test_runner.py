"""
Unit tests for contactlab/experiments/runner.py file.
"""

import json
import os
import shutil
import tempfile
import unittest

import numpy as np
from mock import patch

from contactlab.contactlab_logger import current_context
from contactlab.core.integrator import IntegratorSettings
from contactlab.exceptions import IntegrationError
from contactlab.experiments import runner
from contactlab.experiments.config import ExperimentConfig
from contactlab.experiments.runner import (
    graph_jacobian_error,
    run_census,
    run_graph_check,
    sample_box,
    write_json,
)
from contactlab.maps import catalog
from contactlab.maps.catalog import make_family
from contactlab.translated import census as census_module


class RunnerTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp_dir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.tmp_dir)

    def config(self, **kwargs):
        data = {
            "family": "reeb_shift",
            "K": 2,
            "manifold": "r2n-s1",
            "resolution": 2,
            "steps_per_unit": 200,
            "workers": 1,
            "report_path": os.path.join(self.tmp_dir, "report.json"),
            "actions_path": os.path.join(self.tmp_dir, "actions.csv"),
            "graph_report_path": os.path.join(self.tmp_dir, "graph.json"),
        }
        data.update(kwargs)
        return ExperimentConfig.from_dict(data)


class TestRunCensus(RunnerTestCase):
    def test_passes(self):
        cfg = self.config()
        run = run_census(cfg)
        self.assertTrue(run.passed)
        self.assertEqual(sorted(run.zero_wall), [1, 2])
        self.assertEqual(run.files, {"report": cfg.report_path, "actions": cfg.actions_path})

        with open(cfg.report_path) as handle:
            document = json.load(handle)
        self.assertEqual(
            sorted(document),
            ["config_echo", "distinct_clusters", "errors", "flags", "per_k", "periodic_points"],
        )
        self.assertEqual(document["config_echo"]["family"], "reeb_shift")
        self.assertEqual(sorted(document["per_k"]), ["1", "2"])
        self.assertTrue(document["flags"]["zero_wall_passed"])
        self.assertTrue(document["flags"]["reverified"])
        self.assertTrue(document["flags"]["has_periodic_points"])
        self.assertEqual(document["errors"], {})
        self.assertEqual(document["distinct_clusters"]["count"], 4)
        self.assertEqual(
            document["per_k"]["2"]["integer_envelope"],
            {"ceil_max": 2, "floor_min": 2, "width": 0},
        )
        self.assertTrue(os.path.isfile(cfg.actions_path))

    def test_repeatable(self):
        cfg = self.config()
        run_census(cfg)
        with open(cfg.report_path, "rb") as handle:
            first_report = handle.read()
        with open(cfg.actions_path, "rb") as handle:
            first_actions = handle.read()
        run_census(cfg)
        with open(cfg.report_path, "rb") as handle:
            self.assertEqual(handle.read(), first_report)
        with open(cfg.actions_path, "rb") as handle:
            self.assertEqual(handle.read(), first_actions)

    def test_no_write(self):
        cfg = self.config(K=1)
        run = run_census(cfg, write=False)
        self.assertEqual(run.files, {})
        self.assertFalse(os.path.exists(cfg.report_path))

    def test_log_context(self):
        cfg = self.config(K=2)
        contexts = []
        search = census_module.search_translated_points
        check = runner.zero_wall_cross_check

        def recording(function):
            def record(*args, **kwargs):
                contexts.append(current_context())
                return function(*args, **kwargs)

            return record

        with patch.object(census_module, "search_translated_points", side_effect=recording(search)):
            with patch.object(runner, "zero_wall_cross_check", side_effect=recording(check)):
                run_census(cfg, write=False)

        run_id = cfg.digest()[:8]
        self.assertEqual(contexts[:2], [{"run": run_id, "k": 1}, {"run": run_id, "k": 2}])
        self.assertEqual(contexts[2:], [{"run": run_id, "k": 1}, {"run": run_id, "k": 2}])
        self.assertEqual(current_context(), {})

    def test_zero_wall_error(self):
        cfg = self.config(K=1)
        with patch.object(
            runner, "zero_wall_cross_check", side_effect=IntegrationError("Non-finite flow state")
        ):
            with self.assertLogs("contactlab.experiments.runner", level="ERROR"):
                run = run_census(cfg, write=False)
        self.assertFalse(run.passed)
        self.assertFalse(run.document["flags"]["zero_wall_passed"])
        self.assertEqual(len(run.document["errors"]["1"]), 1)
        self.assertIn("zero wall: IntegrationError", run.document["errors"]["1"][0])


class TestRunGraphCheck(RunnerTestCase):
    def test_reeb_shift(self):
        cfg = self.config()
        run = run_graph_check(cfg, 2)
        self.assertTrue(run.passed)
        self.assertEqual(run.k, 2)
        self.assertEqual(run.files, {"report": cfg.graph_report_path})
        with open(cfg.graph_report_path) as handle:
            document = json.load(handle)
        self.assertEqual(
            sorted(document),
            ["config_echo", "errors", "jacobian", "k", "legendrian", "zero_wall"],
        )
        self.assertEqual(document["legendrian"]["grid_points"], 125)
        self.assertTrue(document["legendrian"]["passed"])
        self.assertTrue(document["jacobian"]["passed"])
        self.assertTrue(document["zero_wall"]["passed"])

    def test_twist_graph_derivative(self):
        m = make_family(
            catalog.Z_PERTURBED_TWIST, settings=IntegratorSettings(steps_per_unit=200)
        )
        points = sample_box(m, np.random.default_rng(0), 5)
        self.assertEqual(points.shape, (5, 3))
        low, high = m.bounding_box()
        self.assertTrue(np.all(points[:, :2] >= low) and np.all(points[:, :2] <= high))
        self.assertTrue(np.all((points[:, 2] >= 0.0) & (points[:, 2] <= 1.0)))
        self.assertLess(graph_jacobian_error(m, points), 1e-5)


class TestWriteJson(RunnerTestCase):
    def test_numpy_values(self):
        path = os.path.join(self.tmp_dir, "doc.json")
        write_json({"b": np.float64(0.5), "a": np.arange(3), "c": np.bool_(True)}, path)
        with open(path) as handle:
            text = handle.read()
        self.assertTrue(text.endswith("}\n"))
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {"a": [0, 1, 2], "b": 0.5, "c": True})

    def test_unknown_type(self):
        with self.assertRaises(TypeError):
            write_json({"a": object()}, os.path.join(self.tmp_dir, "doc.json"))
