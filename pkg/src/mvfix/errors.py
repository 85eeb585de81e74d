"""Exception hierarchy shared by every module in the package."""


class MvfixError(Exception):
    """Base class for all library errors."""


class ModeMismatch(MvfixError, TypeError):
    """Exact and float scalars were combined in one computation."""


class IncompatiblePoints(MvfixError, ValueError):
    pass


class EmptySet(MvfixError, ValueError):
    pass


class LevelMismatch(MvfixError, ValueError):
    pass


class LevelCapExceeded(MvfixError, ValueError):
    pass


class InvalidMetricTable(MvfixError, ValueError):
    def __init__(self, report):
        super().__init__(f"invalid metric table: {report.message}")
        self.report = report


class InexactResult(MvfixError, ArithmeticError):
    """An exact-mode operation would leave the rationals (e.g. an irrational square root)."""


class UndecidableComparison(MvfixError, ArithmeticError):
    """Interval refinement could not separate two exact values."""


class CodomainViolation(MvfixError, ValueError):
    pass


class NegativeArgument(MvfixError, ValueError):
    pass


class EmptyProbeSet(MvfixError, ValueError):
    pass


class NoProbesRightOfT0(MvfixError, ValueError):
    pass


class ZeroDistancePair(MvfixError, ValueError):
    pass


class BoundUnachievable(MvfixError):
    def __init__(self, distance, bound):
        super().__init__(f"nearest image point at distance {distance} exceeds bound {bound}")
        self.distance = distance
        self.bound = bound


class DomainEscape(MvfixError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ProblemFileError(MvfixError, ValueError):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
