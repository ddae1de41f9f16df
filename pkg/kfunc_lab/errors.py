import sys
from typing import Any
from typing import Optional


class KFuncLabError(Exception):
    """Base exception for kfunc-lab.

    :param message: The exception reason.
    :param source: The value, instance or payload that has caused the
        exception.
    """

    def __init__(self, message: Optional[str] = None, source: Any = None, *args, **kwargs):
        self.message = message
        self.source = source
        super().__init__(*args, **kwargs)

    def __str__(self):
        return self.message or "UNKNOWN"


class DomainError(KFuncLabError):
    """Error raised when an argument lies outside the domain of an
    operation.

    For instance evaluating a step function at :math:`s \\le 0`, or asking
    for an interpolation norm with :math:`\\theta \\notin (0, 1)`.
    """

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "Argument outside of the operation domain"
        super().__init__(message, *args, **kwargs)


class DivergentNormError(KFuncLabError):
    """Error raised when a requested norm is infinite.

    This happens with starred Lorentz norms when :math:`p \\le 1` and
    :math:`q < \\infty`, with :math:`p = \\infty` and :math:`q < \\infty`, or
    when the step function has a nonzero tail.
    """

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "The requested norm is divergent"
        super().__init__(message, *args, **kwargs)


class OracleSizeError(KFuncLabError):
    """Error raised when a brute-force oracle refuses an input that would
    make its enumeration explode."""

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "Input too large for a brute-force oracle"
        super().__init__(message, *args, **kwargs)


class QuadratureError(KFuncLabError):
    """Error raised when the adaptive quadrature exhausted its interval
    budget without reaching the requested tolerance."""

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "Quadrature did not converge"
        super().__init__(message, *args, **kwargs)


class InstanceError(KFuncLabError):
    """Base exception for errors happening while reading an instance file."""


class InstanceFormatError(InstanceError):
    """Error raised when an instance file is not valid JSON.

    The original :class:`json.JSONDecodeError` is available with
    :attr:`~BaseException.__cause__`.
    """

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "Instance is not valid JSON"
        super().__init__(message, *args, **kwargs)


class InstanceValidationError(InstanceError):
    """Error raised when an instance payload does not follow the instance
    schema.

    This error is raised when a :class:`pydantic.ValidationError` has been catched
    while validating the instance.
    The original :class:`~pydantic.ValidationError` is available with :attr:`~BaseException.__cause__`.

    .. code-block:: python

        try:
            load_instance("broken.json")
        except InstanceValidationError as exc:
            print("Original validation error cause", exc.__cause__)
    """

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = kwargs.pop("message", message) or "Instance payload validation error"
        super().__init__(message, *args, **kwargs)


class VerificationError(KFuncLabError):
    """Error raised when an unknown verification suite is requested."""

    def __init__(self, message: Optional[str] = None, *args, **kwargs):
        message = (
            kwargs.pop("message", message)
            or f"Unknown verification suite: '{kwargs.get('source')}'"
        )
        super().__init__(message, *args, **kwargs)


def add_note(exc: KFuncLabError, note: str) -> KFuncLabError:
    """Attach the message of an underlying error when the interpreter
    supports exception notes."""
    if sys.version_info >= (3, 11):  # pragma: no cover
        exc.add_note(note)
    return exc
