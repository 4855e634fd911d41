"""Functional tests for contactlab."""

import json
import logging
import os
import shutil
import tempfile
import time
import unittest

from contactlab.constants import DEFAULT_STEPS_PER_UNIT
from contactlab.experiments.config import ExperimentConfig

# Integrator resolution of the end-to-end runs. Lower it to trade accuracy
# for speed when iterating locally.
STEPS_PER_UNIT = int(os.environ.get("CONTACTLAB_E2E_STEPS", DEFAULT_STEPS_PER_UNIT))

# Number of Newton worker threads.
WORKERS = int(os.environ.get("CONTACTLAB_E2E_WORKERS", "2"))

logger = logging.getLogger(__name__)


class BaseContactlabFunctionalTest(unittest.TestCase):
    """Base class for functional tests in contactlab.

    Every test gets its own temporary directory (``self.tmp_dir``) and
    builds configurations with :meth:`config`, which directs all reports
    into that directory.

    """

    def setUp(self):
        """Create the output directory."""
        self.tmp_dir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.tmp_dir)

    def path(self, name):
        """Return the path of ``name`` in the output directory."""
        return os.path.join(self.tmp_dir, name)

    def config(self, family, K, **kwargs):
        """Return a validated configuration writing into the output directory."""
        data = {
            "family": family,
            "K": K,
            "steps_per_unit": STEPS_PER_UNIT,
            "workers": WORKERS,
            "report_path": self.path("report.json"),
            "actions_path": self.path("actions.csv"),
            "graph_report_path": self.path("graph_check.json"),
        }
        data.update(kwargs)
        return ExperimentConfig.from_dict(data)

    def read_json(self, path):
        """Return the parsed JSON document at ``path``."""
        with open(path) as handle:
            return json.load(handle)

    def read_bytes(self, path):
        """Return the raw content of ``path``."""
        with open(path, "rb") as handle:
            return handle.read()

    def assertFinishedWithin(self, started, budget):
        """Assert that less than ``budget`` seconds passed since ``started``.

        ``started`` is a :func:`time.perf_counter` reading. The measured
        runtime is logged.
        """
        elapsed = time.perf_counter() - started
        logger.info("%s finished in %.1f s (budget %d s)", self.id(), elapsed, budget)
        self.assertLess(elapsed, budget, f"run took {elapsed:.1f} s")

    def assertActionsMatch(self, found, expected, tol):
        """Assert that every found action has an expected partner and vice versa."""
        self.assertTrue(found, "no actions found")
        for action in found:
            gap = min(abs(action - value) for value in expected)
            self.assertLessEqual(gap, tol, f"unexpected action {action!r}")
        for value in expected:
            gap = min(abs(action - value) for action in found)
            self.assertLessEqual(gap, tol, f"missing action {value!r}")
