""".. Ignore pydocstyle D400.

============
Contact core
============

Contact geometry of (R^{2n+1}, dz - y.dx) and (R^{2n} x S^1, dz - y.dx):
points, Hamiltonians, the contact vector field and the flow integrator.

"""

from .geometry import (
    ContactPoint,
    alpha,
    as_batch,
    geometric_distance,
    reeb_translate,
    z_distance,
)
from .hamiltonians import (
    PROFILES,
    ConstantHamiltonian,
    CubicProfile,
    Hamiltonian,
    HamiltonianValues,
    PlateauProfile,
    QuadraticProfile,
    Support,
    TwistHamiltonian,
    check_hamiltonian,
)
from .integrator import FlowBatch, FlowState, IntegratorSettings, flow, flow_batch
from .vector_field import contact_vector_field, vector_field_jacobian

__all__ = (
    "alpha",
    "as_batch",
    "check_hamiltonian",
    "contact_vector_field",
    "ConstantHamiltonian",
    "ContactPoint",
    "CubicProfile",
    "flow",
    "flow_batch",
    "FlowBatch",
    "FlowState",
    "geometric_distance",
    "Hamiltonian",
    "HamiltonianValues",
    "IntegratorSettings",
    "PlateauProfile",
    "PROFILES",
    "QuadraticProfile",
    "reeb_translate",
    "Support",
    "TwistHamiltonian",
    "vector_field_jacobian",
    "z_distance",
)
