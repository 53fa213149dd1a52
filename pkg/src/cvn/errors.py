"""Domain errors shared across the package."""


class CvnError(Exception):
    """Base class for all domain errors."""


class IndexOutOfRange(CvnError):
    pass


class NotABasis(CvnError):
    pass


class NotPrimitive(CvnError):
    pass


class Unsupported(CvnError):
    pass


class TrivialClass(CvnError):
    pass


class DisconnectedGraph(CvnError):
    pass


class BadValency(CvnError):
    pass


class WrongRank(CvnError):
    pass


class NonpositiveLength(CvnError):
    pass


class NotClosed(CvnError):
    pass


class NotAForest(CvnError):
    pass


class BadPartition(CvnError):
    pass


class NotAnAutomorphism(CvnError):
    pass


class RankMismatch(CvnError):
    pass


class DimensionMismatch(CvnError):
    pass


class Infeasible(CvnError):
    pass


class EmptyDirection(CvnError):
    pass


class EmptySlice(CvnError):
    pass


class BudgetExceeded(CvnError):
    pass


class WalkStuck(CvnError):
    pass


class NotAGeodesic(CvnError):
    pass


class NotMaximalSimplex(CvnError):
    pass


class NoFacetChain(CvnError):
    pass


class ParamOutOfRange(CvnError):
    pass
