"""Exception hierarchy shared by every module of the package."""


class EvidenceError(ValueError):
    """Base class for all domain errors raised by gbjsfusion.

    Pipeline stages may attach ``stage`` (fusion step name) and ``step``
    (index of a failing combination) before re-raising.
    """

    stage = None
    step = None


# frames, propositions and mass functions

class FrameError(EvidenceError):
    pass


class UnknownElement(EvidenceError):
    pass


class EmptyFocalElement(EvidenceError):
    pass


class NegativeMass(EvidenceError):
    pass


class SumOutOfTolerance(EvidenceError):
    pass


class DuplicateFocalElement(EvidenceError):
    pass


class FrameMismatch(EvidenceError):
    pass


class TotalConflict(EvidenceError):
    """Dempster's rule is undefined: the conflict K reached 1."""


# distributions and weights

class InvalidDistribution(EvidenceError):
    pass


class LengthMismatch(EvidenceError):
    pass


class UnnormalizedWeights(EvidenceError):
    pass


class EmptyEvidenceList(EvidenceError):
    pass


# fusion pipeline

class MixedReliabilityInfo(EvidenceError):
    pass


class NonpositiveReliability(EvidenceError):
    pass


class ZeroWeightSum(EvidenceError):
    pass


class IndexOutOfRange(EvidenceError, IndexError):
    pass


class DegenerateExclusion(EvidenceError):
    pass


class TooFewEvidences(EvidenceError):
    pass


class AllZeroSupport(EvidenceError):
    """Every support degree vanished, i.e. the evidences fully agree."""


# evidence documents

class DocumentError(EvidenceError):
    pass


class EvidenceSyntaxError(DocumentError):
    """Input is not well-formed UTF-8 JSON."""


class SchemaError(DocumentError):
    """Input is JSON but does not follow the evidence document schema."""


class ValidationError(DocumentError):
    """Input follows the schema but describes invalid evidence.

    ``cause`` holds the underlying domain error, e.g. :class:`NegativeMass`.
    """

    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause
