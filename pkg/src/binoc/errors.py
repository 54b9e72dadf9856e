"""Exception hierarchy shared by all modules."""


class BinocError(Exception):
    """Base class for library errors."""


class ResourceLimitExceeded(BinocError):
    """A Groebner computation passed the configured basis-size or degree cap."""


class BoundExceeded(BinocError):
    """Iterative deepening passed its cap without a valid certificate."""


class NotPCofinite(BinocError):
    """The localization along P has infinitely many unit orbits of classes."""

    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


class NilClass(BinocError):
    """The requested monomial is nil (lies in the localized ideal)."""


class NotCoprincipal(BinocError):
    pass


class UnsupportedUnitRank(BinocError):
    """The localized quotient is infinite dimensional over the field."""


class FieldExtensionRequired(BinocError):
    def __init__(self, m, message=None):
        super().__init__(message or f"roots of unity of order {m} are not in the coefficient field")
        self.m = m


class BadCharacteristic(BinocError):
    pass


class CrossCheckMismatch(BinocError):
    """Two independent algorithms disagreed; indicates an implementation bug."""


class DimensionUnsupported(BinocError):
    pass


class ParseError(BinocError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.line = line
        self.column = column
