"""Exception types shared across the package."""


class SuperKahlerError(Exception):
    """Base class for all package errors."""


class VariableMismatchError(SuperKahlerError):
    """Operands live over different variable lists."""


class UnknownVariableError(SuperKahlerError):
    """A variable name is not part of the variable list."""


class InhomogeneousError(SuperKahlerError):
    """A parity-sensitive operation received a parity-inhomogeneous input."""


class ChartMismatchError(SuperKahlerError):
    """Operands belong to different charts."""


class ShapeMismatchError(SuperKahlerError):
    """Tensor component matrices do not match the chart dimension."""


class TensorParityError(SuperKahlerError):
    """Component parities contradict the declared tensor parity."""


class DegenerateFormError(SuperKahlerError):
    """A Gram matrix required to be invertible is degenerate."""


class UnsupportedInversionError(SuperKahlerError):
    """Gram matrix outside the supported inversion class.

    Inversion is supported exactly when the body of the matrix (all odd
    variables set to zero) is a constant invertible rational matrix; the
    nilpotent remainder is then handled by a terminating Neumann series.
    """


class SizeGuardError(SuperKahlerError):
    """Brute-force oracle invoked outside its size guard."""


class ParseError(SuperKahlerError):
    """Expression or chart file syntax error, with source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})" if line else message)


class ChartFileError(SuperKahlerError):
    """Structurally invalid chart description file."""
