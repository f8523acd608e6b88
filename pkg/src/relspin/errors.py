"""Exception hierarchy."""


class RelspinError(ValueError):
    """Base class for all errors raised by this package."""


class NotHermitian(RelspinError):
    pass


class DimensionMismatch(RelspinError):
    pass


class SuperluminalVelocity(RelspinError):
    pass


class OffMassShell(RelspinError):
    pass


class LabelMismatch(RelspinError):
    pass


class InvalidPartition(RelspinError):
    pass


class InvalidAlpha(RelspinError):
    pass


class QuadratureTooCoarse(RelspinError):
    pass


class NotConverged(RelspinError, ArithmeticError):
    pass


class ConfigError(RelspinError):
    """Bad scenario/sweep configuration.  ``field`` and ``line`` locate the problem when known."""

    def __init__(self, message, field=None, line=None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
