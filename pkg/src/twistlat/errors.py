"""Exception types shared across the toolkit."""


class InvalidInputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DegenerateFormError(ValueError):
    """A bilinear form was degenerate or non-unimodular where a unimodular
    one was required."""


class RefinementError(RuntimeError):
    """No consistent quadratic refinement with the requested normalization;
    carries the offending class."""

    def __init__(self, message: str, offending=None):
        super().__init__(message)
        self.offending = offending


class InconclusiveError(RuntimeError):
    """A search hit its resource cap before exhaustion (CLI exit code 3).
    Never a verdict."""

    def __init__(self, message: str, nodes_explored: int = 0):
        super().__init__(message)
        self.nodes_explored = nodes_explored
