"""Exception types shared across the package."""


class BlowupChowError(Exception):
    """Base class for all library errors."""


class RingMismatchError(BlowupChowError):
    """Operands live over different coefficient rings or generator sets."""


class NotAFieldError(BlowupChowError):
    """An operation requiring field coefficients got an integer-tagged input."""


class InhomogeneousError(BlowupChowError):
    """A graded operation received an inhomogeneous (or wrong-degree) input."""


class ParseError(BlowupChowError):
    """Malformed polynomial expression or surface file."""


class SurfaceError(BlowupChowError):
    """Surface lattice data failed validation."""


class PresentationError(BlowupChowError):
    """Internal inconsistency in a presented ring (a bug, not bad input)."""


class BudgetExceededError(BlowupChowError):
    """A computation would exceed its configured resource budget.

    ``formula_count`` carries the closed-form point count when the failing
    computation was an enumeration whose total is known analytically.
    """

    def __init__(self, message, formula_count=None):
        super().__init__(message)
        self.formula_count = formula_count
