"""Work budgeting for exhaustive verifiers.

A verifier that would enumerate more cases than the budget refuses loudly
instead of silently sampling.  A refusal is never a pass.
"""

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10_000_000
_ENV = "MULTISEP_VERIFY_BUDGET"


def resolve_budget(budget=None) -> int:
    if budget is not None:
        b = int(budget)
    else:
        raw = os.environ.get(_ENV)
        b = int(raw) if raw else DEFAULT_BUDGET
    if b < 1:
        raise BudgetExceeded("budget must be positive, got %d" % b)
    return b


def charge(cases: int, budget: int, what: str) -> None:
    """Refuse before doing the work, not after."""
    if cases > budget:
        raise BudgetExceeded(
            "%s needs %d cases, budget is %d" % (what, cases, budget)
        )
