""".. Ignore pydocstyle D400.

.. _contactlab_logger:

=======
Logging
=======

Loggers in contactlab are named by their module name::

    logger = logging.getLogger(__name__)

so a message from the Newton solver is emitted by
``contactlab.translated.newton`` and a census summary by
``contactlab.translated.census``. All of them propagate to ROOT_LOGGER
(``contactlab``), which only has a NullHandler until ``start_logging()``
attaches STDOUT_HANDLER. The command line interface does this for you; to
see solver progress in an interactive session run::

    import contactlab
    contactlab.start_logging()

Census context
==============

A census runs many searches that log the same messages. Code running
inside :func:`log_context` stamps its records with the context values,
so a line of a census over K iterates reads::

    ... contactlab.translated.finder INFO [run=3f2a9c1e k=2] radial_twist k=2: ...

The runner opens the context with the configuration digest and the
census adds the current iterate. Newton worker threads inherit the
context of the thread that submitted their chunks.

.. autofunction:: contactlab.contactlab_logger.log_context

.. autoclass:: contactlab.contactlab_logger.ContextFilter

.. autofunction:: contactlab.contactlab_logger.start_logging(logging_level=logging.INFO)

.. autofunction:: contactlab.contactlab_logger.log_to_stdout

Uncaught exceptions
===================

``sys.excepthook`` is replaced so that uncaught exceptions of long
non-interactive census batches end up in the log together with the
context they were raised in.

"""

import contextlib
import contextvars
import logging
import sys

LEVEL_MAP = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}

LOGGER_NAME = __name__.split(".")[0]

ROOT_LOGGER = logging.getLogger(LOGGER_NAME)
# Handlers raise the threshold where needed.
ROOT_LOGGER.setLevel(logging.DEBUG)
ROOT_LOGGER.addHandler(logging.NullHandler())

STDOUT_LOG_LEVEL = logging.INFO

_CONTEXT = contextvars.ContextVar("contactlab_log_context", default={})


@contextlib.contextmanager
def log_context(**values):
    """Stamp records logged inside the block with ``values``.

    Nested blocks extend the outer context; ``None`` values are left out.
    """
    current = {**_CONTEXT.get(), **{k: v for k, v in values.items() if v is not None}}
    token = _CONTEXT.set(current)
    try:
        yield current
    finally:
        _CONTEXT.reset(token)


def current_context() -> dict:
    """Return a copy of the active census context."""
    return dict(_CONTEXT.get())


class ContextFilter(logging.Filter):
    """Add the census context to records as ``record.context``."""

    def filter(self, record):
        """Set ``record.context`` to ``key=value`` pairs or ``-``."""
        context = _CONTEXT.get()
        record.context = " ".join(f"{key}={value}" for key, value in context.items()) or "-"
        return True


STDOUT_HANDLER = logging.StreamHandler()
STDOUT_HANDLER.addFilter(ContextFilter())
FORMATTER = logging.Formatter(fmt="%(asctime)s %(name)s %(levelname)s [%(context)s] %(message)s")
STDOUT_HANDLER.setFormatter(FORMATTER)


def log_to_stdout(is_on=None, level=None):
    """Configure logging to stdout.

    If a parameter is not provided, its value does not change.

    :param is_on: if True, attach STDOUT_HANDLER to ROOT_LOGGER
    :type is_on: bool
    :param level: logging threshold, integer in [0-50] or level name
    :type level: int or str
    :rtype: None
    """
    if is_on is not None:
        if not isinstance(is_on, bool):
            raise ValueError("Wrong type of 'is_on' parameter: only True/False/None possible.")
        if is_on:
            ROOT_LOGGER.addHandler(STDOUT_HANDLER)
        else:
            ROOT_LOGGER.removeHandler(STDOUT_HANDLER)

    if level is not None:
        if isinstance(level, str) and level.upper() in LEVEL_MAP:
            STDOUT_HANDLER.setLevel(LEVEL_MAP[level.upper()])
        elif isinstance(level, int) and 0 <= level <= 50:
            STDOUT_HANDLER.setLevel(level)
        else:
            raise ValueError("Wrong value of 'level' parameter.")


def start_logging(logging_level=logging.INFO):
    """Start logging contactlab to stdout.

    :param logging_level: logging threshold, integer in [0-50] or level name
    :rtype: None
    """
    log_to_stdout(is_on=True, level=logging_level or STDOUT_LOG_LEVEL)


def _log_all_uncaught_exceptions(exc_type, exc_value, exc_traceback):
    """Log all uncaught exceptions in non-interactive mode."""
    if not issubclass(exc_type, KeyboardInterrupt):
        ROOT_LOGGER.error(
            "Uncaught %s", exc_type.__name__, exc_info=(exc_type, exc_value, exc_traceback)
        )

    sys.__excepthook__(exc_type, exc_value, exc_traceback)


sys.excepthook = _log_all_uncaught_exceptions
