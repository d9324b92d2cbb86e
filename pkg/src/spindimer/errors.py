"""Exception classes shared across the package.

The split mirrors the CLI exit codes: bad input data maps to exit 3,
numerical breakdown to exit 4. Programming errors (contract violations)
stay plain ValueError/TypeError.
"""


class DataError(ValueError):
    """Input data is malformed, out of range, or physically inconsistent."""


class NumericError(ArithmeticError):
    """A computation broke down: overflow, non-convergence, or a failed
    internal cross-check."""
