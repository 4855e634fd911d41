"""Numerical laboratory for translated points of contactomorphisms."""

from .contactlab_logger import log_to_stdout, start_logging  # noqa
from .core import ContactPoint, IntegratorSettings  # noqa
from .maps import ContactMap, compose, evaluate, inverse, iterate, make_family  # noqa
from .translated import find_translated_points, iterated_census  # noqa
