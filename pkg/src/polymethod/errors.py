"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI copies
into reports.  Budget and decomposition failures map to exit status 2,
input errors to exit status 1.
"""

from __future__ import annotations


class PolyMethodError(Exception):
    code = "error"
    exit_status = 1


class InputError(PolyMethodError):
    code = "input_error"


class ParseError(InputError):
    code = "parse_error"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class PreconditionViolated(InputError):
    code = "precondition_violated"


class DomainError(InputError):
    code = "domain_error"


class OracleMissing(InputError):
    code = "oracle_missing"


class MissingPointOracle(OracleMissing):
    code = "missing_point_oracle"


class BudgetError(PolyMethodError):
    """Base for every failure that means "gave up", not "wrong input"."""

    code = "budget_exceeded"
    exit_status = 2


class DegreeBudgetExceeded(BudgetError):
    code = "degree_budget_exceeded"


class NotStabilized(BudgetError):
    code = "not_stabilized"


class RetriesExhausted(BudgetError):
    code = "retries_exhausted"


class DecompositionIncomplete(BudgetError):
    code = "decomposition_incomplete"


class RecursionBudgetExceeded(BudgetError):
    code = "recursion_budget_exceeded"


class RoundBudgetExceeded(BudgetError):
    code = "round_budget_exceeded"


class HamSandwichNotFound(BudgetError):
    code = "ham_sandwich_not_found"


class NotFound(BudgetError):
    code = "not_found"


class BudgetExceeded(BudgetError):
    code = "budget_exceeded"


class GenericityExhausted(BudgetError):
    code = "genericity_exhausted"


class FixtureFailure(PolyMethodError):
    code = "fixture_failure"
