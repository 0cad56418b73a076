"""Enumeration budgets shared by the code analyzer and the decoder table.

Defaults keep casual runs in the seconds-to-minutes range; both limits can
be raised explicitly by callers (or via the CLI budget flags) when a larger
instance is genuinely wanted.
"""

MAX_TABLE_ENTRIES = 2**24
MAX_CODEWORDS = 2**26


class BudgetError(Exception):
    """An enumeration would exceed the configured budget."""
