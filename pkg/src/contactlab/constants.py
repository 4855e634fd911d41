""".. Ignore pydocstyle D400.

=========
Constants
=========

Contactlab defaults.

"""

# Integrator
DEFAULT_STEPS_PER_UNIT = 2000
RICHARDSON_TOL = 1e-8

# Newton solver
DEFAULT_NEWTON_TOL = 1e-9
NEWTON_MAX_ITER = 50
NEWTON_MAX_BACKTRACKS = 12
ARMIJO_C = 1e-4
NEWTON_MAX_STEP = 0.25
PINV_RCOND = 1e-10

# Census
DEFAULT_GEOM_TOL = 0.1
DEFAULT_RANK_TOL = 1e-7
TRIVIAL_ACTION_TOL = 1e-6
INTEGER_TOL = 1e-6
CONTINUUM_MIN_MEMBERS = 10
SEED_CHUNK_SIZE = 256

# Manifolds
MANIFOLD_R2N1 = "r2n1"
MANIFOLD_R2N_S1 = "r2n-s1"
MANIFOLDS = (MANIFOLD_R2N1, MANIFOLD_R2N_S1)
