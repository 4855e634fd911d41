""".. Ignore pydocstyle D400.

================
Legendrian graph
================

The graph of a contactomorphism in the 1-jet space, used as an independent
channel to verify translated points and their actions.

"""

from .cross_check import ZeroWallReport, zero_wall_cross_check
from .jet import (
    JetBatch,
    JetGraphPoint,
    gamma,
    gamma_batch,
    gamma_from_evaluation,
    gamma_jacobian,
    gamma_jacobian_batch,
    gamma_jacobian_from_evaluation,
    legendrian_residual,
    legendrian_residual_batch,
    legendrian_residual_from_evaluation,
    product_graph,
    product_graph_residual,
    product_graph_residual_from_evaluation,
    sample_grid,
)

__all__ = (
    "gamma",
    "gamma_batch",
    "gamma_from_evaluation",
    "gamma_jacobian",
    "gamma_jacobian_batch",
    "gamma_jacobian_from_evaluation",
    "JetBatch",
    "JetGraphPoint",
    "legendrian_residual",
    "legendrian_residual_batch",
    "legendrian_residual_from_evaluation",
    "product_graph",
    "product_graph_residual",
    "product_graph_residual_from_evaluation",
    "sample_grid",
    "zero_wall_cross_check",
    "ZeroWallReport",
)
