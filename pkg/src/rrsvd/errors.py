"""Exception hierarchy shared by all modules."""


class RRSVDError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(RRSVDError, ValueError):
    """Matrix dimensions are incompatible with the requested operation."""


class ParameterError(RRSVDError, ValueError):
    """An argument is outside its admissible range."""


class DegenerateInputError(RRSVDError, ValueError):
    """The input carries no usable structure (zero vector, rank too low, ...)."""


class ConvergenceError(RRSVDError, ArithmeticError):
    """An iterative method hit its iteration cap.

    ``residual`` holds the off-diagonal measure reached when it gave up.
    """

    def __init__(self, message: str, residual: float, sweeps: int):
        super().__init__(f"{message} (residual={residual:.3e} after {sweeps} sweeps)")
        self.residual = residual
        self.sweeps = sweeps


class ParseError(RRSVDError, ValueError):
    """Malformed tournament document. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class TournamentError(RRSVDError, ValueError):
    """A Tournament object violates its structural invariants."""
