"""Exception types shared across the toolkit.

Structural validation errors carry a ``witness`` attribute naming the
offending elements, so callers (and the CLI report writer) can show a
concrete counterexample instead of a bare boolean.
"""


class QtopError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAPartialOrder(QtopError):
    """The relation is not reflexive, antisymmetric or transitive."""


class MissingJoin(QtopError):
    """Some pair of elements has no least upper bound."""


class MissingMeet(QtopError):
    """Some pair of elements has no greatest lower bound."""


class SizeLimitExceeded(QtopError):
    """A brute-force operation was asked to run past its declared cap."""


class NotAssociative(QtopError):
    """Tensor (or monoid) associativity fails at the witness triple."""


class UnitLawFails(QtopError):
    """k (x) v = v = v (x) k fails at the witness element."""


class JoinNotPreserved(QtopError):
    """The tensor does not preserve binary joins in one variable."""


class BottomNotAbsorbing(QtopError):
    """bottom (x) v = bottom = v (x) bottom fails at the witness element."""


class InvalidMonoidTable(QtopError):
    """A monoid multiplication table is not associative or has no neutral element."""


class NotMonotone(QtopError):
    """A closure table required to be monotone is not; witness (B, A, x)."""


class LevelsInvalid(QtopError):
    """A level family violates one of the conditions C0..C3.

    ``condition`` names the violated law, ``witness`` pins the instance.
    """

    def __init__(self, condition, witness=None, message=None):
        super().__init__(message or f"level family violates {condition}", witness)
        self.condition = condition


class NotAMetric(QtopError):
    """A distance matrix fails symmetry, the zero diagonal, separation or the triangle inequality."""


class NotFreeMonoidQuantale(QtopError):
    """The operation needs a quantale built by the free-monoid constructor."""


class CompositionFails(QtopError):
    """Enriched-category composition law fails at the witness triple."""


class ParseError(QtopError):
    """A file does not match the expected schema; ``location`` holds file/field."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location

    def __str__(self):
        base = super().__str__()
        return f"{self.location}: {base}" if self.location else base


class ValidationError(QtopError):
    """A parsed object refers to unknown elements or breaks a delegated law."""
