"""
Unit tests for contactlab/contactlab_logger.py file.
"""

import io
import logging
import unittest

from mock import patch

from contactlab import contactlab_logger
from contactlab.contactlab_logger import (
    ROOT_LOGGER,
    STDOUT_HANDLER,
    ContextFilter,
    current_context,
    log_context,
    log_to_stdout,
    start_logging,
)


class TestLogger(unittest.TestCase):
    def tearDown(self):
        ROOT_LOGGER.removeHandler(STDOUT_HANDLER)

    def test_stdout_handler_off_by_default(self):
        self.assertEqual(ROOT_LOGGER.name, "contactlab")
        self.assertNotIn(STDOUT_HANDLER, ROOT_LOGGER.handlers)

    def test_start_logging(self):
        start_logging(logging.WARNING)
        self.assertIn(STDOUT_HANDLER, ROOT_LOGGER.handlers)
        self.assertEqual(STDOUT_HANDLER.level, logging.WARNING)

        start_logging("debug")
        self.assertEqual(STDOUT_HANDLER.level, logging.DEBUG)

    def test_log_to_stdout(self):
        log_to_stdout(is_on=True, level=30)
        self.assertIn(STDOUT_HANDLER, ROOT_LOGGER.handlers)
        log_to_stdout(is_on=False)
        self.assertNotIn(STDOUT_HANDLER, ROOT_LOGGER.handlers)

        with self.assertRaises(ValueError):
            log_to_stdout(is_on="yes")
        with self.assertRaises(ValueError):
            log_to_stdout(level=60)
        with self.assertRaises(ValueError):
            log_to_stdout(level="LOUD")

    @patch("sys.__excepthook__")
    def test_uncaught_exceptions_are_logged(self, hook_mock):
        error = RuntimeError("census aborted")
        with self.assertLogs("contactlab", level="ERROR") as logs:
            contactlab_logger._log_all_uncaught_exceptions(RuntimeError, error, None)
        self.assertIn("Uncaught RuntimeError", logs.output[0])
        hook_mock.assert_called_once_with(RuntimeError, error, None)

        hook_mock.reset_mock()
        with self.assertRaises(AssertionError):
            with self.assertLogs("contactlab", level="ERROR"):
                contactlab_logger._log_all_uncaught_exceptions(
                    KeyboardInterrupt, KeyboardInterrupt(), None
                )
        hook_mock.assert_called_once()


class TestLogContext(unittest.TestCase):
    def tearDown(self):
        ROOT_LOGGER.removeHandler(STDOUT_HANDLER)

    def test_nested_context(self):
        context_filter = ContextFilter()
        record = logging.makeLogRecord({"msg": "census"})
        self.assertTrue(context_filter.filter(record))
        self.assertEqual(record.context, "-")

        with log_context(run="3f2a9c1e"):
            with log_context(k=2, orbit=None):
                self.assertEqual(current_context(), {"run": "3f2a9c1e", "k": 2})
                context_filter.filter(record)
                self.assertEqual(record.context, "run=3f2a9c1e k=2")
            self.assertEqual(current_context(), {"run": "3f2a9c1e"})
        self.assertEqual(current_context(), {})

    def test_context_in_stdout_records(self):
        stream = io.StringIO()
        with patch.object(STDOUT_HANDLER, "stream", stream):
            start_logging(logging.INFO)
            logger = logging.getLogger("contactlab.translated.census")
            with log_context(run="3f2a9c1e", k=1):
                logger.info("Clustered %d points", 4)
            logger.info("Done")

        lines = stream.getvalue().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].endswith("INFO [run=3f2a9c1e k=1] Clustered 4 points"))
        self.assertTrue(lines[1].endswith("INFO [-] Done"))
