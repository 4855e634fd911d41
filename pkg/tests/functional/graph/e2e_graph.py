import math

from contactlab.experiments.runner import LEGENDRIAN_BOUND, run_graph_check

from ..base import BaseContactlabFunctionalTest


class TestGraphCheck(BaseContactlabFunctionalTest):
    def test_radial_twist(self):
        params = {"profile": "quadratic", "amplitude": math.pi}
        cfg = self.config("radial_twist", 2, params=params, resolution=40)
        run = run_graph_check(cfg, 2)
        self.assertTrue(run.passed)

        document = self.read_json(cfg.graph_report_path)
        self.assertLessEqual(document["legendrian"]["max_residual"], LEGENDRIAN_BOUND)
        self.assertTrue(document["jacobian"]["passed"])
        wall = document["zero_wall"]
        self.assertTrue(wall["points"])
        self.assertLessEqual(wall["max_p_norm"], 10 * cfg.newton_tol)
        self.assertLessEqual(wall["max_theta_gap"], 10 * cfg.newton_tol)
        self.assertEqual(wall["discrepancies"], [])

    def test_z_perturbed_twist(self):
        cfg = self.config("z_perturbed_twist", 2, resolution=40, z_resolution=4)
        run = run_graph_check(cfg, 2)
        self.assertTrue(run.passed)

        wall = self.read_json(cfg.graph_report_path)["zero_wall"]
        self.assertTrue(wall["points"])
        self.assertLessEqual(wall["max_p_norm"], 10 * cfg.newton_tol)
        self.assertEqual(wall["discrepancies"], [])
        self.assertEqual(run.document["errors"], {})

    def test_z_perturbed_twist_third_iterate(self):
        cfg = self.config("z_perturbed_twist", 1, resolution=10, z_resolution=4)
        run = run_graph_check(cfg, 3, write=False)
        self.assertTrue(run.document["legendrian"]["passed"])
        self.assertTrue(run.document["jacobian"]["passed"])
