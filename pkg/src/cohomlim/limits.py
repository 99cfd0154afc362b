"""Size caps and enumeration budgets shared by every module."""

import os

from .errors import BudgetExceeded

DEFAULT_ORDER_CAP = 64
DEFAULT_BUDGET = 10**7
BUDGET_ENV = "COHOMLIM_BUDGET"


def resolve_budget(budget=None):
    """Explicit argument, then $COHOMLIM_BUDGET, then the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def check_budget(estimate, budget=None):
    budget = resolve_budget(budget)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    return budget
