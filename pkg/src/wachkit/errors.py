"""Exception types shared across the package."""


class WachkitError(Exception):
    """Base class."""


class PrecisionLoss(WachkitError, ArithmeticError):
    """A result cannot be certified at the requested precision."""


class NotAUnit(WachkitError, ArithmeticError):
    pass


class LevelMismatch(WachkitError, ValueError):
    pass


class VerificationFailed(WachkitError):
    """A computed object fails its defining identity at the budget."""


class MalformedPair(WachkitError, ValueError):
    pass


class MalformedEll(WachkitError, ValueError):
    pass


class AllWeightsZero(WachkitError, ValueError):
    pass


class NotAdmissible(WachkitError, ValueError):
    pass


class OrdinaryExcluded(WachkitError, ValueError):
    pass


class ClassViolation(WachkitError, ValueError):
    pass


class BoundViolation(WachkitError, ValueError):
    pass


class IntegralityFailed(WachkitError):
    pass


class PropertyFailed(WachkitError):
    pass


class ParityViolation(WachkitError, ValueError):
    pass


class NotSurjective(WachkitError):
    pass


class StalledResidual(WachkitError):
    pass


class NotLowerable(WachkitError, ValueError):
    pass
