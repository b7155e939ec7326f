class ProsimplError(Exception):
    pass


class MalformedExpression(ProsimplError, ValueError):
    pass


class ValidationError(ProsimplError, ValueError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class CoherenceError(ValidationError):
    """Functor data that does not assemble into a simplicial map."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MustTruncateError(ProsimplError, ValueError):
    pass


class NotFilteredError(ProsimplError, ValueError):
    pass


class BudgetError(ProsimplError, RuntimeError):
    pass
