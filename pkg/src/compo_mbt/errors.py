"""Exception types shared by all modules."""


class CompoMbtError(Exception):
    """Base class for every error raised by this package."""


class UnknownLabel(CompoMbtError):
    pass


class EmptySet(CompoMbtError):
    pass


class InvalidModel(CompoMbtError):
    def __init__(self, violations, name=""):
        self.violations = list(violations)
        where = f" {name}" if name else ""
        super().__init__(f"invalid model{where}: " + "; ".join(self.violations))


class NotComposable(CompoMbtError):
    pass


class LabelClash(CompoMbtError):
    pass


class ModelTooLarge(CompoMbtError):
    pass


class NotInputEnabled(CompoMbtError):
    pass


class AlphabetMismatch(CompoMbtError):
    pass


class NotAUtrace(CompoMbtError):
    pass


class NotACounterexample(CompoMbtError):
    pass


class DepthTooLarge(CompoMbtError):
    pass


class UnknownProperty(CompoMbtError):
    pass


class ParseError(CompoMbtError):
    """Syntax error with a 1-based source position and the tokens that would have been accepted."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        self.message = message
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)
