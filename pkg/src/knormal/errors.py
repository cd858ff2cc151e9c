"""Exceptions shared across the package.

Input validation raises plain ValueError.  The two classes here mark the
other failure modes the command line distinguishes: a computation that ran
out of its configured budget (retryable with a bigger budget or a cache
entry), and an internal consistency check that failed (a bug, never a
property of the input).
"""


class BudgetError(Exception):
    """A configured time or size budget was exhausted before completion."""


class InternalCheckError(Exception):
    """An internal invariant that must hold by theory failed to hold."""
