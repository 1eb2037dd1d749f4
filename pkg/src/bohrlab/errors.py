"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search ran past its configured item/step budget."""
