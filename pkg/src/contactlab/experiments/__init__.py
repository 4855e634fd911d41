""".. Ignore pydocstyle D400.

===========
Experiments
===========

Configuration, orchestration and reports behind the ``contactlab`` command.

"""

from .config import ExperimentConfig, dump_config, load_config
from .runner import CensusRun, GraphCheckRun, run_census, run_graph_check
from .tables import CensusTables
from .verify import Check, VerifyReport, run_verify

__all__ = (
    "CensusRun",
    "CensusTables",
    "Check",
    "dump_config",
    "ExperimentConfig",
    "GraphCheckRun",
    "load_config",
    "run_census",
    "run_graph_check",
    "run_verify",
    "VerifyReport",
)
