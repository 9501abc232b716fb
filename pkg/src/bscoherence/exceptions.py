"""Exception types raised across the package."""


class DomainError(ValueError):
    """A numeric argument lies outside the domain of a formula."""


class InvalidStateError(ValueError):
    """A state or density matrix violates its normalization or support invariants."""


class TruncationError(RuntimeError):
    """A requested truncation cannot meet its tail tolerance."""

    def __init__(self, message, required_cutoff=None):
        super().__init__(message)
        self.required_cutoff = required_cutoff


class CascadeError(ValueError):
    """A beam-splitter cascade is structurally invalid."""


class CascadeParseError(CascadeError):
    """A cascade description file could not be parsed."""

    def __init__(self, message, lineno):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
