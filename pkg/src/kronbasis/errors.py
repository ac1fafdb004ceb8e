"""Exceptions and resource limits shared across the package."""

import os

# cells = n^(2r) * n!, the size of the vectorized Kronecker-power matrix
DEFAULT_BUDGET_CELLS = int(os.environ.get("KRONBASIS_BUDGET_CELLS", 2_000_000))


class VerificationError(RuntimeError):
    """A finite instance of a claimed identity failed to hold."""


class BudgetExceeded(RuntimeError):
    """The requested instance is larger than the configured resource budget."""


def check_budget(cells: int, budget: int | None, what: str) -> None:
    limit = DEFAULT_BUDGET_CELLS if budget is None else budget
    if cells > limit:
        raise BudgetExceeded(f"{what} needs {cells} cells, budget is {limit}")
