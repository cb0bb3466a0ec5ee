"""Exception types shared across the engine."""


class ShapeError(ValueError):
    """Operands disagree in variable count, dimension, degree or algebra."""


class PolyParseError(ValueError):
    """A polynomial string does not conform to the grammar."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class AlgebraError(ValueError):
    """Invalid Lie algebra data or an operation not defined for it."""


class ConfigError(ValueError):
    """A problem description file could not be read."""
