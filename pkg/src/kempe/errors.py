"""Exception hierarchy shared by every recoloring routine."""


class KempeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(KempeError):
    pass


class ColorOutOfRange(KempeError):
    pass


class DegenerateChain(KempeError):
    """A move (v, c) was requested with c equal to the current color of v."""


class InvalidMove(KempeError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ImproperIntermediate(KempeError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class PreconditionViolated(KempeError):
    pass


class PaletteTooSmall(PreconditionViolated):
    pass


class InternalInvariantBroken(KempeError):
    """An invariant that the underlying proof guarantees did not hold."""


class LayeringFailed(PreconditionViolated):
    pass


class TooLarge(PreconditionViolated):
    pass


class BudgetExceeded(PreconditionViolated):
    pass


class NotAChain(PreconditionViolated):
    pass


class NotChordal(PreconditionViolated):
    def __init__(self, message, witness=None):
        super().__init__(message)
        # (v, x, y): x and y are later neighbours of v that are not adjacent
        self.witness = witness


class InvalidDecomposition(PreconditionViolated):
    pass


class AdjacentPair(PreconditionViolated):
    pass


class InconsistentColoring(KempeError):
    pass


class NotASeparator(PreconditionViolated):
    pass


class NotAClique(PreconditionViolated):
    pass


class ThreePrismExcluded(PreconditionViolated):
    pass


class RoutingFailed(KempeError):
    pass
