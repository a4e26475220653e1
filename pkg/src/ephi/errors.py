"""Exception hierarchy shared by every module of the package."""


class EphiError(Exception):
    """Base class for all errors raised by :mod:`ephi`."""


class DescriptorMismatch(EphiError, TypeError):
    pass


class UnitTestUnsupported(EphiError):
    pass


class ArityMismatch(EphiError, ValueError):
    pass


class ParseError(EphiError, ValueError):
    pass


class LocalizationBoundExceeded(EphiError):
    pass


class DimensionMismatch(EphiError, ValueError):
    pass


class NotAlternating(EphiError, ValueError):
    pass


class NotInvertible(EphiError, ArithmeticError):
    pass


class PfaffianNotUnit(NotInvertible):
    pass


class PfaffianNotOne(EphiError, ValueError):
    pass


class UnsupportedAtom(EphiError, TypeError):
    pass


class UnsupportedIndex(EphiError, IndexError):
    pass


class UndecidableIdeal(EphiError):
    pass


class UndecidableDivisibility(EphiError, UserWarning):
    pass


class FormMismatch(EphiError, ValueError):
    pass


class NoUnitPivot(EphiError, ArithmeticError):
    pass


class NotDetOne(EphiError, ValueError):
    pass


class NotIdentityAtZero(EphiError, ValueError):
    pass


class CoverInvalid(EphiError, ValueError):
    pass


class SizeLimitExceeded(EphiError, ValueError):
    pass


class SchemaError(EphiError, ValueError):
    pass
