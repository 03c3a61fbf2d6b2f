"""Exception hierarchy. Every domain error derives from :class:`MolsError`."""


class MolsError(ValueError):
    pass


class NotPrimePower(MolsError):
    pass


class DivisionByZero(MolsError, ZeroDivisionError):
    pass


class ZeroScaleFactor(MolsError):
    pass


class OrderMismatch(MolsError):
    pass


class DuplicateClass(MolsError):
    def __init__(self, i, j, message=None):
        self.indices = (i, j)
        super().__init__(message or f"pairs {i} and {j} lie in the same equivalence class")


class SameClass(MolsError):
    pass


class NoneFound(MolsError):
    pass


class InvalidBlockSize(MolsError):
    pass


class InvalidTruncation(MolsError):
    pass


class NotAPolygon(MolsError):
    pass


class NotCorrelating(MolsError):
    pass


class InvalidShift(MolsError):
    pass


class NotFull(MolsError):
    pass


class CapTooLarge(MolsError):
    pass


class AlphaIsPMinusOne(MolsError):
    pass


class NonPrimeOrder(MolsError):
    pass


class DimensionMismatch(MolsError):
    pass


class MessageLengthMismatch(MolsError):
    pass


class InconsistentWord(MolsError):
    pass


class AlistFormatError(MolsError):
    pass
