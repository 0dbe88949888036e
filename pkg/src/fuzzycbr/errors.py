"""Exception hierarchy shared by all fuzzycbr modules."""


class FuzzyCBRError(Exception):
    """Base class for every error raised by this package."""


class InvalidSystemError(FuzzyCBRError, ValueError):
    """A system record or step distribution violates its invariants (e.g. n < 2)."""


class DegenerateSystemError(FuzzyCBRError):
    """No well-ordered profile has positive membership, so possibilities are undefined."""


class InvalidDistributionError(FuzzyCBRError, ValueError):
    pass


class EmptyFigureError(FuzzyCBRError, ValueError):
    pass


class ParseError(FuzzyCBRError, ValueError):
    pass


class NoCasesError(FuzzyCBRError):
    pass


class DimensionError(FuzzyCBRError, ValueError):
    pass


class IdConflictError(FuzzyCBRError, KeyError):
    pass


class RangeError(FuzzyCBRError, ValueError):
    pass
