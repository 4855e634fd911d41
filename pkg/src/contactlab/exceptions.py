""".. Ignore pydocstyle D400.

==========
Exceptions
==========

Custom contactlab exceptions.

.. autoclass:: ContactLabError
.. autoclass:: ValidationError
.. autoclass:: ConfigError
.. autoclass:: UnknownFamilyError
.. autoclass:: EvaluationError
.. autoclass:: IntegrationError
.. autoclass:: PreconditionError
.. autoclass:: UnknownSuiteError

"""

from typing import Optional

import wrapt


class ContactLabError(Exception):
    """Base class for all contactlab errors."""


class ValidationError(ContactLabError, ValueError):
    """An error while validating parameters or configuration."""


class ConfigError(ValidationError):
    """Invalid experiment configuration.

    :param path: configuration file (or ``"<dict>"`` for in-memory configs)
    :param field: offending field, dotted for nested fields
    :param reason: human readable reason
    """

    def __init__(self, path: str, field: str, reason: str):
        """Store the location of the error."""
        self.path = path
        self.field = field
        self.reason = reason
        super().__init__(f"{path}: field '{field}': {reason}")


class UnknownFamilyError(ValidationError):
    """Family name is not in the catalog."""


class EvaluationError(ContactLabError):
    """Hamiltonian evaluation produced non-finite values."""


class IntegrationError(ContactLabError):
    """Flow integration failed.

    :param message: description of the failure
    :param time: integration time at which the failure was detected
    """

    def __init__(self, message: str, time: Optional[float] = None):
        """Store the time of failure."""
        self.time = time
        if time is not None:
            message = f"{message} (t={time:.6g})"
        super().__init__(message)


class PreconditionError(ContactLabError):
    """A translated-point precondition does not hold.

    :param which: name of the residual that failed (e.g. ``"phi^3"``)
    :param residual_norm: norm of that residual
    :param tol: tolerance it was compared with
    """

    def __init__(self, which: str, residual_norm: float, tol: float):
        """Store the failing residual."""
        self.which = which
        self.residual_norm = residual_norm
        self.tol = tol
        super().__init__(
            f"Point is not a translated point of {which}: "
            f"residual norm {residual_norm:.3e} > {tol:.3e}"
        )


class UnknownSuiteError(ValidationError):
    """Unknown verification suite name."""


@wrapt.decorator
def handle_floating_point_errors(wrapped, instance, args, kwargs):
    """Turn numpy floating point errors into :class:`IntegrationError`."""
    try:
        return wrapped(*args, **kwargs)
    except FloatingPointError as exception:
        raise IntegrationError(f"Floating point error: {exception}") from exception
