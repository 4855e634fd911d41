"""Util decorators for contactlab."""

import numpy as np
import wrapt

from contactlab.exceptions import EvaluationError, ValidationError


def _arrays(result):
    """Yield all numpy arrays contained in a (named) tuple or array."""
    if isinstance(result, np.ndarray):
        yield result
    elif isinstance(result, tuple):
        for item in result:
            if item is not None:
                yield from _arrays(item)


@wrapt.decorator
def finite_output(wrapped, instance, args, kwargs):
    """Raise EvaluationError if the wrapped function returns non-finite values.

    The result may be an array or a (named) tuple of arrays.
    """
    result = wrapped(*args, **kwargs)
    for array in _arrays(result):
        if not np.all(np.isfinite(array)):
            owner = instance if instance is not None else wrapped
            raise EvaluationError(
                f"Non-finite values returned by {wrapped.__name__} of {owner!r}."
            )
    return result


def _parameter_names(wrapped, instance):
    """Return the positional parameter names of ``wrapped`` without self or cls."""
    code = wrapped.__code__
    names = code.co_varnames[: code.co_argcount]
    if instance is not None and names and names[0] in ("self", "cls"):
        names = names[1:]
    return names


def positive_int(name):
    """Validate that keyword or positional argument ``name`` is an int >= 1."""

    @wrapt.decorator
    def wrapper(wrapped, instance, args, kwargs):
        names = _parameter_names(wrapped, instance)
        if name in kwargs:
            value = kwargs[name]
        elif name in names and names.index(name) < len(args):
            value = args[names.index(name)]
        else:
            return wrapped(*args, **kwargs)

        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise ValidationError(f"`{name}` must be a positive integer, got {value!r}.")
        if value < 1:
            raise ValidationError(f"`{name}` must be a positive integer, got {value}.")
        return wrapped(*args, **kwargs)

    return wrapper


def _first_row(result):
    """Take the first row of every array in a (named) tuple or array."""
    if isinstance(result, np.ndarray):
        row = result[0]
        return float(row) if np.ndim(row) == 0 else row
    if isinstance(result, tuple) and hasattr(result, "_fields"):
        return type(result)._make(_first_row(item) for item in result)
    if isinstance(result, tuple):
        return tuple(_first_row(item) for item in result)
    return result


@wrapt.decorator
def single_point(wrapped, instance, args, kwargs):
    """Call a batched function on a single point and return the single result.

    The second argument, passed by position or by name, is a ContactPoint
    (or a flat coordinate vector); it is passed on as a batch of one point
    and the first row of every returned array is returned.
    """
    names = _parameter_names(wrapped, instance)
    name = names[1] if len(names) > 1 else None
    if len(args) >= 2:
        point = args[1]
    elif name in kwargs:
        point = kwargs[name]
    else:
        raise TypeError(f"{wrapped.__name__} expects a map and a point.")
    if hasattr(point, "as_array"):
        point = point.as_array()
    point = np.asarray(point, dtype=float)
    if point.ndim != 1:
        raise ValidationError(
            f"Expected a single point, got an array of shape {point.shape}."
        )
    if len(args) >= 2:
        args = (args[0], point[None, :], *args[2:])
    else:
        kwargs = {**kwargs, name: point[None, :]}
    return _first_row(wrapped(*args, **kwargs))
