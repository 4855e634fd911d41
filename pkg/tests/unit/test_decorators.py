"""
Unit tests for contactlab/utils/decorators.py file.
"""

import unittest
from collections import namedtuple

import numpy as np

from contactlab.core.geometry import ContactPoint
from contactlab.exceptions import EvaluationError, ValidationError
from contactlab.utils.decorators import finite_output, positive_int, single_point

Pair = namedtuple("Pair", ["value", "gradient"])


class TestDecorators(unittest.TestCase):
    def test_finite_output(self):
        @finite_output
        def test_function(value):
            return Pair(np.array([value]), None)

        self.assertEqual(test_function(1.0).value[0], 1.0)
        with self.assertRaisesRegex(EvaluationError, "test_function"):
            test_function(np.nan)

        class Example:
            def __repr__(self):
                return "Example()"

            @finite_output
            def method(self):
                return (np.ones(2), (np.array([np.inf]),))

        with self.assertRaisesRegex(EvaluationError, "method of Example()"):
            Example().method()

    def test_positive_int(self):
        @positive_int("k")
        def test_function(m, k):
            return k

        self.assertEqual(test_function(None, 3), 3)
        self.assertEqual(test_function(None, k=np.int64(2)), 2)
        for value in [0, -1, 1.5, True, "2"]:
            with self.assertRaisesRegex(ValidationError, "`k` must be a positive integer"):
                test_function(None, value)

        class Example:
            @positive_int("k")
            def method(self, k):
                return k

        self.assertEqual(Example().method(4), 4)
        with self.assertRaises(ValidationError):
            Example().method(k=0)

    def test_single_point(self):
        @single_point
        def test_function(owner, points, scale=1.0):
            return Pair(points.sum(axis=1) * scale, points * scale)

        result = test_function(None, ContactPoint.from_array([1.0, 2.0, 3.0]), scale=2.0)
        self.assertIsInstance(result, Pair)
        self.assertEqual(result.value, 12.0)
        np.testing.assert_array_equal(result.gradient, [2.0, 4.0, 6.0])

        result = test_function(None, [1.0, 1.0, 1.0])
        self.assertEqual(result.value, 3.0)

        result = test_function(None, points=ContactPoint.from_array([1.0, 2.0, 3.0]))
        self.assertEqual(result.value, 6.0)
        np.testing.assert_array_equal(result.gradient, [1.0, 2.0, 3.0])
        result = test_function(owner=None, points=[1.0, 1.0, 1.0], scale=3.0)
        self.assertEqual(result.value, 9.0)
        with self.assertRaises(ValidationError):
            test_function(None, points=np.zeros((2, 3)))

        with self.assertRaises(ValidationError):
            test_function(None, np.zeros((2, 3)))
        with self.assertRaises(TypeError):
            test_function(None)
