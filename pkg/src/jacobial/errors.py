"""Exception hierarchy shared by every module.

Each error carries a CLI exit code so the command line layer can map
failures without a lookup table.
"""

from __future__ import annotations


class JacobialError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class MalformedSpec(JacobialError):
    exit_code = 2


class DuplicateName(JacobialError):
    pass


class DisconnectedGraph(JacobialError):
    pass


class ImproperSubcurve(JacobialError):
    pass


class EmptySubcurve(JacobialError):
    pass


class UnknownName(JacobialError):
    pass


class BadParameter(JacobialError):
    pass


class TooManyComponents(JacobialError):
    exit_code = 4


class TooManyEdges(JacobialError):
    exit_code = 4


class RankTooHigh(JacobialError):
    exit_code = 4


class NonIntegralTotal(JacobialError):
    pass


class WrongTotal(JacobialError):
    pass


class WrongTotalDegree(JacobialError):
    pass


class NotGeneral(JacobialError):
    pass


class DisconnectedNormalization(JacobialError):
    pass


class NotBlockCompatible(JacobialError):
    pass


class HasSeparatingPoints(JacobialError):
    pass


class HasBridges(HasSeparatingPoints):
    pass


class WrongRank(JacobialError):
    pass


class GradeCountMismatch(JacobialError):
    """Face counts of the toric arrangement disagree with stratum counts.

    Never expected on valid input; signals a bug.
    """
