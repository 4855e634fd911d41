"""
Unit tests for contactlab/exceptions.py file.
"""

import unittest

import numpy as np
from mock import MagicMock

from contactlab.exceptions import (
    ConfigError,
    IntegrationError,
    PreconditionError,
    UnknownSuiteError,
    ValidationError,
    handle_floating_point_errors,
)


class ExceptionsTestCase(unittest.TestCase):
    def test_handle_floating_point_errors(self):
        func = MagicMock()
        wrapped = handle_floating_point_errors(func)

        func.return_value = 42
        self.assertEqual(wrapped(40, 2, operation="add"), 42)
        func.assert_called_once_with(40, 2, operation="add")

        func.side_effect = FloatingPointError("overflow encountered in multiply")
        with self.assertRaisesRegex(IntegrationError, "overflow encountered"):
            wrapped()

    def test_handle_floating_point_errors_on_method(self):
        class Stepper:
            @handle_floating_point_errors
            def step(self, value):
                with np.errstate(over="raise"):
                    return np.float64(value) * 1e308

        stepper = Stepper()
        self.assertEqual(stepper.step(0.5), 0.5 * 1e308)
        with self.assertRaisesRegex(IntegrationError, "Floating point error"):
            stepper.step(10.0)
        self.assertEqual(Stepper.step.__name__, "step")

    def test_config_error(self):
        error = ConfigError("radial.json", "params.epsilon", "must be < 1")
        self.assertEqual(str(error), "radial.json: field 'params.epsilon': must be < 1")
        self.assertEqual(error.field, "params.epsilon")
        self.assertIsInstance(error, ValidationError)
        self.assertIsInstance(error, ValueError)

    def test_integration_error(self):
        self.assertEqual(str(IntegrationError("Non-finite flow state")), "Non-finite flow state")
        error = IntegrationError("Non-finite flow state", time=0.25)
        self.assertEqual(str(error), "Non-finite flow state (t=0.25)")
        self.assertEqual(error.time, 0.25)

    def test_precondition_error(self):
        error = PreconditionError("phi^3", 1e-3, 1e-9)
        self.assertIn("phi^3", str(error))
        self.assertIn("1.000e-03", str(error))

    def test_unknown_suite(self):
        self.assertTrue(issubclass(UnknownSuiteError, ValidationError))
