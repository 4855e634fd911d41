""".. Ignore pydocstyle D400.

=======
Catalog
=======

Closed-form families of contact maps. Every family is the time-``time``
map of a single :class:`~contactlab.core.hamiltonians.TwistHamiltonian`
(or of a constant Hamiltonian for ``reeb_shift``).

==================  ===========================================================
Family              Hamiltonian
==================  ===========================================================
radial_twist        h(|x|^2 + |y|^2), z independent
z_perturbed_twist   h(|x|^2 + |y|^2) (1 + epsilon sin(2 pi frequency z))
anisotropic_twist   h(a |x|^2 + b |y|^2) with a != b
hamiltonian_lift    h(|x|^2 + |y|^2) (1 + tilt x_1), z independent
reeb_shift          constant amplitude on all of space
==================  ===========================================================

The profile ``h`` is ``cubic`` (default), ``quadratic`` or ``plateau``
scaled by ``amplitude``. Any family except ``reeb_shift`` also accepts
``modulation`` (a factor 1 + modulation sin(2 pi t)).

"""

import logging
from typing import Any, Dict, Optional

from contactlab.core.hamiltonians import (
    PROFILES,
    ConstantHamiltonian,
    Hamiltonian,
    PlateauProfile,
    TwistHamiltonian,
)
from contactlab.core.integrator import IntegratorSettings
from contactlab.exceptions import UnknownFamilyError, ValidationError
from contactlab.maps.contactomorphism import Atom, ContactMap

logger = logging.getLogger(__name__)

RADIAL_TWIST = "radial_twist"
Z_PERTURBED_TWIST = "z_perturbed_twist"
ANISOTROPIC_TWIST = "anisotropic_twist"
HAMILTONIAN_LIFT = "hamiltonian_lift"
REEB_SHIFT = "reeb_shift"

_COMMON = {"n": 1, "time": 1.0}
_PROFILE = {"profile": "cubic", "amplitude": 1.0, "s0": 0.5, "modulation": 0.0}

FAMILIES: Dict[str, Dict[str, Any]] = {
    RADIAL_TWIST: {**_COMMON, **_PROFILE},
    Z_PERTURBED_TWIST: {**_COMMON, **_PROFILE, "epsilon": 0.5, "frequency": 1.0},
    ANISOTROPIC_TWIST: {**_COMMON, **_PROFILE, "a": 1.0, "b": 2.0},
    HAMILTONIAN_LIFT: {**_COMMON, **_PROFILE, "tilt": 0.3},
    REEB_SHIFT: {**_COMMON, "amplitude": 1.0},
}


def family_defaults(name: str) -> Dict[str, Any]:
    """Return the default parameters of a family."""
    try:
        return dict(FAMILIES[name])
    except KeyError:
        raise UnknownFamilyError(
            f"Unknown family '{name}', expected one of: {', '.join(sorted(FAMILIES))}."
        ) from None


def resolve_params(name: str, params: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Merge ``params`` into the family defaults and validate the keys."""
    resolved = family_defaults(name)
    unknown = set(params or {}) - set(resolved)
    if unknown:
        raise ValidationError(
            f"Unknown parameter(s) for family '{name}': {', '.join(sorted(unknown))}."
        )
    resolved.update(params or {})

    n = resolved["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"Parameter n must be a positive integer, got {n!r}.")
    if not resolved["time"] > 0:
        raise ValidationError(f"Parameter time must be positive, got {resolved['time']!r}.")
    if "profile" in resolved and resolved["profile"] not in PROFILES:
        raise ValidationError(
            f"Unknown profile '{resolved['profile']}', "
            f"expected one of: {', '.join(sorted(PROFILES))}."
        )
    if name == ANISOTROPIC_TWIST and resolved["a"] == resolved["b"]:
        raise ValidationError("anisotropic_twist needs a != b; use radial_twist instead.")
    return resolved


def make_hamiltonian(name: str, params: Optional[Dict[str, Any]] = None) -> Hamiltonian:
    """Return the Hamiltonian of a catalog family."""
    p = resolve_params(name, params)
    if name == REEB_SHIFT:
        return ConstantHamiltonian(p["n"], p["amplitude"])

    if p["profile"] == PlateauProfile.name:
        profile = PlateauProfile(p["amplitude"], p["s0"])
    else:
        profile = PROFILES[p["profile"]](p["amplitude"])

    return TwistHamiltonian(
        p["n"],
        profile,
        a=p.get("a", 1.0),
        b=p.get("b", 1.0),
        epsilon=p.get("epsilon", 0.0),
        frequency=p.get("frequency", 1.0),
        tilt=p.get("tilt", 0.0),
        modulation=p["modulation"],
    )


def make_family(
    name: str,
    params: Optional[Dict[str, Any]] = None,
    periodic_z: bool = False,
    settings: Optional[IntegratorSettings] = None,
) -> ContactMap:
    """Return the catalog map ``name`` with the given parameters.

    :param name: family name, one of :data:`FAMILIES`
    :param params: family parameters, missing ones take their defaults
    :param periodic_z: build the map on R^{2n} x S^1
    :param settings: integrator settings
    """
    p = resolve_params(name, params)
    hamiltonian = make_hamiltonian(name, p)
    logger.debug("Built family %s with %s", name, p)
    return ContactMap(
        (Atom(hamiltonian, 0.0, float(p["time"])),),
        p["n"],
        periodic_z=periodic_z,
        settings=settings or IntegratorSettings(),
        name=name,
    )
