"""Exception hierarchy shared by all modules."""


class OrthoRadialError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OrthoRadialError, ValueError):
    pass


class DegreeExceeded(OrthoRadialError):
    pass


class NotConnected(OrthoRadialError):
    pass


class EulerViolation(OrthoRadialError):
    pass


class NotIncident(OrthoRadialError):
    pass


class Disconnected(OrthoRadialError):
    pass


class InconsistentDirections(OrthoRadialError):
    pass


class NotACycle(OrthoRadialError):
    pass


class SelfCrossing(OrthoRadialError):
    pass


class NotEssential(OrthoRadialError):
    pass


class Unreachable(OrthoRadialError):
    pass


class ConditionsViolated(OrthoRadialError):
    pass


class CentralBoundaryMonotone(OrthoRadialError):
    pass


class NotACandidate(OrthoRadialError):
    pass


class NoCandidates(OrthoRadialError):
    pass


class PreconditionUnmet(OrthoRadialError):
    pass


class NotValid(OrthoRadialError):
    pass


class NotRectangulated(OrthoRadialError):
    pass


class InfeasibleLengths(OrthoRadialError):
    pass


class InconsistentMap(OrthoRadialError):
    pass


class CapExceeded(OrthoRadialError):
    pass


class GenerationFailed(OrthoRadialError):
    pass
