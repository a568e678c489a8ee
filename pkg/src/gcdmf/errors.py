"""Exception types shared across the package."""


class GcdmfError(Exception):
    """Base class for every error raised by this package."""


class CycleDetected(GcdmfError):
    pass


class UnknownLabel(GcdmfError):
    pass


class BadParam(GcdmfError):
    pass


class Unsupported(BadParam):
    pass


class NotAnInterval(GcdmfError):
    pass


class NotLocalLattice(GcdmfError):
    pass


class NonHomogeneous(GcdmfError):
    pass


class BudgetExceeded(GcdmfError):
    pass


class NotApplicable(GcdmfError):
    pass


class IdentityX(GcdmfError):
    pass


class NotAlternating(GcdmfError):
    pass


class Incomparable(GcdmfError):
    pass


class LiteralSyntaxError(GcdmfError, ValueError):
    pass


class UnknownGenerator(GcdmfError, ValueError):
    pass
