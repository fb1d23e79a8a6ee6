"""Exception hierarchy shared by every epglab module."""


class EpgLabError(Exception):
    """Base class for all library errors."""


class BadParameter(EpgLabError, ValueError):
    pass


# groups

class GroupValidationError(EpgLabError):
    """A Cayley table violates one of the group laws."""


class NotLatinSquare(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    pass


class NoIdentityAtZero(GroupValidationError):
    pass


class ProductTooLarge(EpgLabError):
    pass


class NotNilpotent(EpgLabError):
    pass


# graphs

class VertexOutOfRange(EpgLabError, IndexError):
    pass


class TooLargeForExactSearch(EpgLabError):
    pass


class TooManyCliques(EpgLabError):
    pass


class TooLarge(EpgLabError):
    pass


class SearchBudgetExceeded(EpgLabError):
    """A backtracking search gave up. This is never a refutation."""


# graph-side analysis

class NotTransitive(EpgLabError):
    """The relation "m divides |A & B|" is not transitive on the cliques.

    ``witness`` holds three clique indices (a, b, c) with a~b, b~c but not a~c.
    """

    def __init__(self, m, witness):
        self.m = m
        self.witness = witness
        super().__init__(f"approx_{m} is not transitive on cliques {witness}")


class NotAbelianEPG(EpgLabError):
    pass


class TupleOutOfRange(EpgLabError, ValueError):
    pass


class ConditionsViolated(EpgLabError):
    pass


class MarkingStuck(EpgLabError):
    """The p-component marking could not satisfy the count for ``witness``."""

    def __init__(self, witness, needed, available):
        self.witness = witness
        self.needed = needed
        self.available = available
        super().__init__(
            f"cannot mark {needed} vertices in intersection of size {len(witness)} "
            f"({available} markable)"
        )


class ConstructionFailed(EpgLabError):
    pass


class NoExponentElement(EpgLabError):
    pass
