""".. Ignore pydocstyle D400.

============
Contact maps
============

Contactomorphism algebra and the catalog of example families.

"""

from .catalog import FAMILIES, family_defaults, make_family, make_hamiltonian
from .contactomorphism import (
    Atom,
    BatchEvaluation,
    ContactMap,
    MapEvaluation,
    compose,
    evaluate,
    evaluate_batch,
    inverse,
    iterate,
)
from .lift import lift_primitive, lift_primitive_defect

__all__ = (
    "Atom",
    "BatchEvaluation",
    "compose",
    "ContactMap",
    "evaluate",
    "evaluate_batch",
    "FAMILIES",
    "family_defaults",
    "inverse",
    "iterate",
    "lift_primitive",
    "lift_primitive_defect",
    "make_family",
    "make_hamiltonian",
    "MapEvaluation",
)
