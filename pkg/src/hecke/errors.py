"""Exception hierarchy. The CLI maps these onto exit codes."""


class HeckeError(Exception):
    pass


class ParseError(HeckeError, ValueError):
    """Malformed input text / JSON."""


class DomainError(HeckeError, ValueError):
    """Well-formed input outside the mathematical domain of an operation."""


class BudgetExceeded(HeckeError, RuntimeError):
    """A coset enumeration hit the configured cap."""

    def __init__(self, message, budget=None):
        super().__init__(message)
        self.budget = budget


class BackendMismatch(HeckeError, ValueError):
    """Operands live on different Hecke pairs."""
