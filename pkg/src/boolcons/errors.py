"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Inputs have inconsistent sizes or an unsupported number of variables."""


class PreconditionError(ValueError):
    """A mathematical precondition does not hold.

    ``witness`` holds the first input index at which the precondition fails.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpectrumError(ValueError):
    """A vector of integers is not the Walsh spectrum of any Boolean function."""


class DivisibilityError(ArithmeticError):
    """A Walsh formula produced a non-divisible intermediate sum.

    This cannot happen for a correct formula, so it is reported separately
    from ordinary input errors.
    """


class HexFormatError(ValueError):
    pass


class AnfSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
