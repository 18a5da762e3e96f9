from __future__ import annotations


class LegchError(Exception):
    """Base class for all errors raised by the workbench.

    ``code`` is a short machine-readable tag (``SYNTAX``, ``BOUNDS``, ...)
    that the CLI maps onto exit codes.
    """

    code = "ERROR"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class FrontError(LegchError):
    """Malformed or invalid front diagram (SYNTAX, BOUNDS, UNCLOSED, INCONSISTENT)."""


class DiscError(LegchError):
    """Disc enumeration failure (INVALID, BUDGET)."""


class BudgetError(DiscError):
    code = "BUDGET"


class DSquaredError(LegchError):
    code = "DSQUARED"


class AlgebraError(LegchError):
    """UNKNOWN_GENERATOR and DGA text-format problems."""


class AugmentationError(LegchError):
    """TOOBIG, NOT_AUGMENTATION."""


class ComplexError(LegchError):
    """NOT_A_COMPLEX, NOT_CHAIN_MAP, SHAPE."""
