"""Exception hierarchy.  Each class carries the CLI exit code for its category."""


class MipolyError(Exception):
    exit_code = 1


class InfeasibleError(MipolyError):
    """Feasible set (or the requested slice of it) is empty."""

    exit_code = 2


class NegativityError(MipolyError):
    """A point with negative objective value was found; the non-negativity
    contract is violated.  Carries the witness."""

    exit_code = 3

    def __init__(self, point, value):
        self.point = tuple(point)
        self.value = value
        super().__init__(f"objective is negative at {self.point}: {value}")


class GuardError(MipolyError):
    """A desk-scale resource guard was exceeded (enumeration size, dimension)."""

    exit_code = 4


class SchemaError(MipolyError):
    """Problem file violates the input schema."""

    exit_code = 5


class UnboundedError(MipolyError):
    """Constraint system does not describe a polytope."""

    exit_code = 6


class DimensionError(MipolyError):
    """Dimension mismatch between operands."""

    exit_code = 7


class SingularMatrixError(MipolyError):
    """Singular matrix or linearly dependent input where independence is required."""

    exit_code = 1
