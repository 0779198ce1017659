"""Exception hierarchy shared by all modules."""


class JumpLociError(Exception):
    """Base class for every error raised by this package."""


class InvalidExponentError(JumpLociError, ValueError):
    """A character exponent is not a finite rational number."""


class MalformedBraidError(JumpLociError, ValueError):
    pass


class InvalidComponentError(JumpLociError, ValueError):
    pass


class ComponentUnderflowError(JumpLociError, ValueError):
    """Deleting a component would leave nothing behind."""


class NonReducedInputError(JumpLociError, ValueError):
    """Two branches coincide as germs."""


class InsufficientTruncationError(JumpLociError, ValueError):
    """A series is known to too low an order to decide the answer."""


class ArityError(JumpLociError, ValueError):
    """Character length does not match the number of components."""


class BudgetExceededError(JumpLociError):
    """A grid enumeration would need more evaluations than allowed."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"grid needs {required} evaluations but the budget is {budget}"
        )


class HypothesisViolationError(JumpLociError, ValueError):
    """A character does not satisfy the triviality pattern a formula needs."""


class ContradictionError(JumpLociError):
    """A dimension prediction came out impossible (negative, or λ = 1 with h1 = 0)."""


class CoverageError(JumpLociError, ValueError):
    """A scan report does not cover the points an operation needs."""
