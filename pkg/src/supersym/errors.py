"""Exception types raised by the engine."""


class SupersymError(Exception):
    """Base class for all engine errors."""


class ShapeError(SupersymError, ValueError):
    pass


class EquivarianceMismatch(SupersymError):
    pass


class InvalidGroup(SupersymError, ValueError):
    pass


class DegreeZeroContent(SupersymError):
    """A symmetric (co)algebra was requested on a space with degree-0 content."""


class NotConnected(SupersymError):
    pass


class NotCommutative(SupersymError):
    pass


class NotCocommutative(SupersymError):
    pass


class FactorizationFailure(SupersymError):
    """A map that must factor through a subspace does not; indicates a bug."""


class Sym2Nonzero(SupersymError):
    pass


class DegenerateInterpolation(SupersymError):
    pass


class InvalidSpec(SupersymError, ValueError):
    pass
