"""
Exception hierarchy shared by every package.

All library failures derive from LabError so the CLI and the HTTP layer can
map them to exit codes and status codes in one place.
"""


class LabError(Exception):
    """Base class for laboratory errors."""
    pass


class DomainError(LabError, ValueError):
    """A parameter lies outside the domain of an operation."""
    pass


class PathTooLongError(DomainError):
    """Exhaustive enumeration was asked for a path that is too long."""
    pass


class VacuousBoundError(LabError):
    """The envelope value reached 1, so the requested bound says nothing."""
    pass


class PreconditionError(LabError):
    """A precondition of the requested bound does not hold for the supplied inputs."""
    pass


class ConfigError(LabError):
    """Malformed or inconsistent experiment configuration."""
    pass


class ReportError(LabError):
    """Writing or reading run artifacts failed."""
    pass


def format_error(error: Exception, context: str = "") -> dict:
    """Format an error into a response body for the CLI and the HTTP layer."""
    if isinstance(error, PathTooLongError):
        message = "Path is too long for exhaustive enumeration."
    elif isinstance(error, DomainError):
        message = "Parameter out of range."
    elif isinstance(error, VacuousBoundError):
        message = "Envelope value is at least 1; the bound is vacuous."
    elif isinstance(error, PreconditionError):
        message = "Precondition of the requested bound does not hold."
    elif isinstance(error, ConfigError):
        message = "Invalid configuration."
    elif isinstance(error, (ReportError, OSError)):
        message = "Could not read or write run artifacts."
    else:
        message = "Computation failed."
    if context:
        message = f"{message} {context}"

    return {
        "status": "error",
        "message": message,
        "technical_details": str(error),
    }
