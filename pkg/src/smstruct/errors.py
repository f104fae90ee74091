"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: usage errors exit 2 (argparse default),
ContractViolation and its subclasses exit 3, FuelExhausted exits 4.
"""

from __future__ import annotations


class SmstructError(Exception):
    """Base class for package errors."""


class ContractViolation(SmstructError):
    """An operation precondition or a verified postcondition failed."""


class ConfigurationError(ContractViolation):
    """Missing or inconsistent fixture/spec metadata."""


class NotQuasiendomorphism(ContractViolation):
    """Row reduction established that the input does not define a
    quasiendomorphism."""


class NotQuasiendomorphismAtBudget(NotQuasiendomorphism):
    """Row reduction could not certify a quasiendomorphism within the
    configured search budget; not a definitive negative."""

    def __init__(self, msg: str, budget: int):
        super().__init__(f"{msg} (budget {budget})")
        self.budget = budget


class TableExhausted(ContractViolation):
    """A frozen ring-class table was asked for a value outside its window."""


class InsufficientGenericity(ContractViolation):
    """Not enough sufficiently generic picks exist at this finite scale."""


class CoverImpossible(ContractViolation):
    """A requested finite cover does not exist."""


class FuelExhausted(SmstructError):
    """A fuel-bounded search ran out of fuel before reaching a verdict.

    ``partial`` optionally carries whatever partial result was computed
    (e.g. an incomplete neighborhood graph).
    """

    def __init__(self, msg: str, partial=None):
        super().__init__(msg)
        self.partial = partial


EXIT_USAGE = 2
EXIT_CONTRACT = 3
EXIT_FUEL = 4
