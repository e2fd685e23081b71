"""Exception hierarchy.

Everything raised by the library derives from :class:`QkitError`.  Errors that
mean "this structure breaks an axiom or a law" derive from
:class:`LawViolation` and carry a machine-readable ``witness``; the CLI maps
those to exit code 1 and everything else to exit code 2.
"""

from __future__ import annotations


class QkitError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class LawViolation(QkitError):
    pass


class UsageError(QkitError):
    pass


# order_core
class CycleError(LawViolation):
    pass


class UnknownElement(UsageError):
    pass


class NotALattice(LawViolation):
    pass


class NotJoinPreserving(LawViolation):
    pass


class NotMeetPreserving(LawViolation):
    pass


class SizeCapExceeded(UsageError):
    pass


# closure_core
class NotIntersectionSystem(LawViolation):
    pass


class C1Violation(LawViolation):
    pass


class C2Violation(LawViolation):
    pass


class C3Violation(LawViolation):
    pass


# resolution
class MonotonicityViolation(LawViolation):
    pass


class JoinAxiomViolation(LawViolation):
    pass


class EmptyKernelViolation(LawViolation):
    pass


class NotAnEmbedding(LawViolation):
    pass


class NotAFullSetOfStates(LawViolation):
    pass


# transitions / functors
class ConditionDisagreement(LawViolation):
    """A_# and A_* disagree. Should be unreachable; signals a bug."""


class NotComposable(UsageError):
    pass


class ASharpFails(LawViolation):
    pass


class ValueOutsideImage(LawViolation):
    pass


class NotAClosMorphism(LawViolation):
    pass


class NotContinuous(LawViolation):
    pass


# quantum examples
class OrthoLawViolation(LawViolation):
    pass


class NotOrthomodular(LawViolation):
    pass


class NotAtomistic(LawViolation):
    pass
