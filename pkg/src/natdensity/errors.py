"""Exceptions raised when a checked precondition or contract fails."""


class ContractViolation(ValueError):
    """Base class.  ``index`` is the offending position, when there is one."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class DominationViolation(ContractViolation):
    """A replacement modulus dips below the original one."""


class NotIncreasing(ContractViolation):
    """A modulus is not strictly increasing (or not positive)."""


class NotDisjoint(ContractViolation):
    """Two events share a 1."""


class NotNull(ContractViolation):
    """A probability was refuted to equal 0."""


class NotBelow(ContractViolation):
    """``e'(n) > e(n)`` where ``e' <= e`` was required."""


class NotMatching(ContractViolation):
    """An event differs from the meet/join it was claimed to be."""


class InternalContradiction(ContractViolation):
    """A certificate promised a witness that does not exist."""


class EmptyPeriod(ContractViolation):
    """A regular event was given an empty period."""


class NoWitness(ContractViolation):
    """A density was requested for an event with no convergence modulus."""


class InvalidWeights(ContractViolation):
    """Point weights are negative or do not sum to 1."""


class InvalidDegree(ContractViolation):
    """A fuzzy membership degree lies outside [0, 1]."""
