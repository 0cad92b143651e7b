"""Exception hierarchy shared across the package."""


class IwahoriGrError(Exception):
    """Base class for all errors raised by this package."""


# --- ring construction and arithmetic ---

class NonPrime(IwahoriGrError):
    pass


class BadDegree(IwahoriGrError):
    pass


class NotAUnit(IwahoriGrError):
    pass


# --- root system data ---

class UnsupportedType(IwahoriGrError):
    pass


class BadIndex(IwahoriGrError):
    pass


class HighestRoot(IwahoriGrError):
    pass


# --- structure constants ---

class OppositeRoots(IwahoriGrError):
    pass


class CertificationFailure(IwahoriGrError):
    pass


# --- group elements and valuations ---

class IdentityElement(IwahoriGrError):
    pass


class PrecisionExceeded(IwahoriGrError):
    pass


class NotFactorizable(IwahoriGrError):
    pass


class AxiomViolation(IwahoriGrError):
    pass


# --- graded Lie algebra ---

class MixedReduction(IwahoriGrError):
    pass


class ReducedInput(IwahoriGrError):
    pass


class Mismatch(IwahoriGrError):
    pass


# --- enveloping algebra ---

class GenerationFailure(IwahoriGrError):
    pass


class QuotientMismatch(IwahoriGrError):
    pass


# --- group algebra filtrations ---

class GroupTooLarge(IwahoriGrError):
    pass


class PropertyViolation(IwahoriGrError):
    pass


class MembershipFailure(IwahoriGrError):
    pass


# --- verification driver ---

class InadmissiblePrime(IwahoriGrError):
    pass
