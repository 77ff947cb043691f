"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: validation and parse problems exit
with 1, failed statistical property checks with 2.
"""


class JitterdiscError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(JitterdiscError, ValueError):
    """Invalid argument or malformed domain object."""


class CapacityError(ValidationError):
    """A requested point count exceeds the configured hard cap."""


class ApplicabilityError(ValidationError):
    """Formula hypotheses violated; the message names the failed condition."""


class ExactInfeasibleError(JitterdiscError, RuntimeError):
    """Exact star discrepancy out of budget; use heuristic or certified."""


class CoverBudgetError(JitterdiscError, RuntimeError):
    """Certified-cover enumeration out of budget; use a smaller grid resolution."""


class ParseError(JitterdiscError, ValueError):
    """Malformed input file; the message carries the position."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc += str(path)
        if line is not None:
            loc += f":{line}"
        super().__init__(f"{loc}: {message}" if loc else message)
        self.path = path
        self.line = line
