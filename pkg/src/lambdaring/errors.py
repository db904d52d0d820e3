"""Exception hierarchy shared by the whole package."""


class LambdaRingError(Exception):
    """Base class for every error raised by lambdaring."""

    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = list(path)

    def with_context(self, where):
        self.path.insert(0, where)
        return self

    def __str__(self):
        msg = super().__str__()
        if self.path:
            msg += " (at " + " > ".join(self.path) + ")"
        return msg


class NotInvertibleError(LambdaRingError):
    """A rational function numerator is outside the invertible factor class."""


class InconsistencyError(LambdaRingError):
    """A result that must be a polynomial kept a residual denominator."""


class ParseError(LambdaRingError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
