class DomainError(ValueError):
    """An argument lies outside the region where the quantity is defined."""


class DimensionMismatchError(ValueError):
    pass


class NullClassError(ValueError):
    """A Pauli string touches a site whose fourth-moment contraction vanishes."""


class NonRealSpectrumError(ArithmeticError):
    pass


class ClosedFormMismatchError(ArithmeticError):
    pass


class NormalizationError(ValueError):
    pass
