class ParameterError(ValueError):
    """Raised for inputs outside the domain an operation supports."""


class NotADiscriminant(ParameterError):
    pass


class UnsupportedLevel(ParameterError):
    """Level shape with no local embedding formula available."""


class NotCoprime(ParameterError):
    pass


class IntegralityError(ArithmeticError):
    """A trace evaluated to a non-integral rational."""
