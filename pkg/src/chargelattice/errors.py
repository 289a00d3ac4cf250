"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

__all__ = [
    "ChargeLatticeError",
    "UndefinedSum",
    "EmptyFamily",
    "ParseError",
    "NotASemiRing",
    "NotAMember",
    "NotInRing",
    "InvalidPartition",
    "NotAdditive",
    "AttainsBothInfinities",
    "EmptyNotZero",
    "Inadmissible",
    "WitnessFailure",
    "UnsupportedRule",
    "ExtensionMismatch",
    "ViolatingSubset",
    "SearchExhausted",
    "UnknownFixture",
    "RegressionMismatch",
    "InstanceError",
    "IdentityViolation",
    "DichotomyMismatch",
]


class ChargeLatticeError(Exception):
    """Base class for all errors raised by chargelattice."""


class UndefinedSum(ChargeLatticeError, ArithmeticError):
    """An expression of the form +inf + (-inf) was evaluated."""


class EmptyFamily(ChargeLatticeError, ValueError):
    """A supremum or infimum was requested over an empty collection."""


class ParseError(ChargeLatticeError, ValueError):
    """Text could not be decoded as an extended rational."""


class NotASemiRing(ChargeLatticeError):
    """A set family violates one of the semi-ring axioms.

    ``axiom`` is one of ``"empty"``, ``"intersection"``, ``"difference"``;
    ``witness`` holds the offending member(s).
    """

    def __init__(self, axiom: str, witness: tuple, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"semi-ring axiom '{axiom}' fails at {witness}")


class NotAMember(ChargeLatticeError, KeyError):
    pass


class NotInRing(ChargeLatticeError, ValueError):
    def __init__(self, subset):
        self.subset = subset
        super().__init__(f"{subset!r} is not a finite disjoint union of members")


class InvalidPartition(ChargeLatticeError, ValueError):
    pass


class NotAdditive(ChargeLatticeError):
    def __init__(self, member, partition, lhs, rhs):
        self.member = member
        self.partition = partition
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"additivity fails on {member!r}: value {lhs} but partition {partition!r} sums to {rhs}"
        )


class AttainsBothInfinities(ChargeLatticeError):
    def __init__(self, pos_member, neg_member):
        self.pos_member = pos_member
        self.neg_member = neg_member
        super().__init__(f"+inf attained at {pos_member!r} and -inf at {neg_member!r}")


class EmptyNotZero(ChargeLatticeError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"value on the empty set is {value}, expected 0")


class Inadmissible(ChargeLatticeError):
    """The family supremum (or, dually, infimum) is -inf (+inf) on a member."""

    def __init__(self, member, dual: bool = False):
        self.member = member
        self.dual = dual
        which = "inf is +inf" if dual else "sup is -inf"
        super().__init__(f"family is not admissible: pointwise {which} on {member!r}")


class WitnessFailure(ChargeLatticeError):
    """A countable-additivity witness broke its tail bound at truncation ``n``."""

    def __init__(self, n: int, target_value, partial_sum, bound):
        self.n = n
        self.target_value = target_value
        self.partial_sum = partial_sum
        self.bound = bound
        super().__init__(
            f"truncation {n}: |{target_value} - {partial_sum}| exceeds tail bound {bound}"
        )


class UnsupportedRule(ChargeLatticeError, ValueError):
    pass


class ExtensionMismatch(ChargeLatticeError):
    def __init__(self, member, lhs, rhs, what: str = "sup"):
        self.member = member
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{what}: ring-side {lhs} != extended semi-ring-side {rhs} on {member!r}")


class ViolatingSubset(ChargeLatticeError):
    def __init__(self, subset, value, side: str):
        self.subset = subset
        self.value = value
        self.side = side
        super().__init__(f"{side} side: subset {subset!r} has value {value}")


class SearchExhausted(ChargeLatticeError):
    pass


class UnknownFixture(ChargeLatticeError, KeyError):
    pass


class RegressionMismatch(ChargeLatticeError):
    def __init__(self, query: str, expected, got):
        self.query = query
        self.expected = expected
        self.got = got
        super().__init__(f"{query}: expected {expected}, got {got}")


class InstanceError(ChargeLatticeError):
    """An instance document failed to load; ``location`` is a JSON path."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class IdentityViolation(ChargeLatticeError):
    def __init__(self, identity: str, member, lhs, rhs):
        self.identity = identity
        self.member = member
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{identity} fails on {member!r}: {lhs} != {rhs}")


class DichotomyMismatch(ChargeLatticeError):
    pass
