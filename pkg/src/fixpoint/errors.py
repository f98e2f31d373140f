"""Exception hierarchy shared across the package."""


class FixpointError(Exception):
    """Base class for every error raised by this package."""


class InputError(FixpointError, ValueError):
    """An argument violates a documented precondition."""


class FormatError(InputError):
    """A serialized document or expression could not be parsed.

    ``location`` points at the offending token, JSON path or line.
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class ContractError(FixpointError):
    """A solver was called on an instance outside its contract."""


class BudgetExceeded(FixpointError):
    """A computation was refused because it would exceed a configured budget."""

    def __init__(self, message: str, budget: str | None = None, limit: int | None = None):
        self.budget = budget
        self.limit = limit
        super().__init__(message)
