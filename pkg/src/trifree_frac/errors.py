"""Exception hierarchy shared by every module of the package."""


class TrifreeError(Exception):
    """Base class for all errors raised by trifree_frac."""


class MalformedInput(TrifreeError, ValueError):
    pass


class NonPlanar(TrifreeError):
    pass


class InvalidRotation(TrifreeError):
    pass


class Disconnected(TrifreeError):
    pass


class BudgetExceeded(TrifreeError):
    """A search ran past its configured node or pivot limit."""


# reductions
class AdjacentPair(TrifreeError):
    pass


class NoCommonFace(TrifreeError):
    pass


class FaceLengthEqualsGirth(TrifreeError):
    pass


class NoValidIndex(TrifreeError):
    """Folding found no admissible index; the input violated a precondition."""


class NotCutVertex(TrifreeError):
    pass


class NotSafe(TrifreeError):
    pass


class TriangleCreated(TrifreeError):
    pass


# colorings
class NotCommonDenominator(TrifreeError):
    pass


class NoColoring(TrifreeError):
    pass


class NotMonochromatic(TrifreeError):
    pass


class InfeasibleInput(TrifreeError):
    pass


# proof engine
class NotTight(TrifreeError):
    pass


class WrongDenominator(TrifreeError):
    pass


class Infeasible(TrifreeError):
    pass


class SizeMismatch(TrifreeError):
    pass


class DemandMismatch(TrifreeError):
    pass


class MonoColoringFailed(TrifreeError):
    pass


class NoSafeFace(TrifreeError, AssertionError):
    pass


class NoRuleApplies(TrifreeError, AssertionError):
    pass


class ParamOutOfRange(TrifreeError, ValueError):
    pass
