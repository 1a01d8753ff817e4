"""
Error hierarchy for qchu-kit
"""
from typing import Optional, Tuple


class QChuError(Exception):
    """Base class; `witness` names the elements exhibiting the problem"""

    def __init__(self, message: str, witness: Optional[Tuple[str, ...]] = None):
        super().__init__(message)
        self.witness = witness


# order_core
class CycleError(QChuError):
    pass


class NoBottomError(QChuError):
    pass


class NoMeetError(QChuError):
    pass


class AmbiguousJoinError(QChuError):
    pass


class UnknownAxiomError(QChuError):
    pass


# chu_core
class NoBottomRowError(QChuError):
    pass


class NotPrincipalError(QChuError):
    pass


class ConsistentPairError(QChuError):
    pass


class SizeLimitError(QChuError):
    pass


# measurement
class NotQuasiClassicalError(QChuError):
    pass


class JoinError(QChuError):
    pass


class DomainMismatchError(QChuError):
    pass


class MissingConjugateError(QChuError):
    pass


# ortho_hilbert
class NotOrthocomplementError(QChuError):
    pass


class EmptyPerpError(QChuError):
    pass


# symmetry
class PartialityMismatchError(QChuError):
    pass


class SpaceMismatchError(QChuError):
    pass


class EmptyFilterError(QChuError):
    pass


class AdjunctionError(QChuError):
    pass


# generators
class NotProjectiveLatticeError(QChuError):
    pass


class RangeError(QChuError):
    pass


# formats
class SchemaError(QChuError):
    pass
