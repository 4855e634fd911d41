"""Census of the quadratic radial twist."""
import math

import contactlab
from contactlab.experiments.config import ExperimentConfig
from contactlab.experiments.runner import run_census

# Enable verbose logging to standard output
contactlab.start_logging()

cfg = ExperimentConfig.from_dict(
    {
        "family": "radial_twist",
        "K": 2,
        "params": {"profile": "quadratic", "amplitude": math.pi},
        "resolution": 40,
    }
)
run = run_census(cfg, progress=True)
print(run.passed, run.census.action_table())
