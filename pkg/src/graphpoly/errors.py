"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Malformed graph input text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExceededError(RuntimeError):
    """An operation was asked to exceed its configured size cap."""

    def __init__(self, message, cap_name=None):
        super().__init__(message)
        self.cap_name = cap_name


class OutsideCertifiedRegionError(RuntimeError):
    """Evaluation point lies outside the certified zero-free disk."""


class NumericsError(RuntimeError):
    """A numeric routine failed to reach its accuracy target."""


class InternalConsistencyError(AssertionError):
    """An identity that must hold exactly failed; indicates a bug."""
