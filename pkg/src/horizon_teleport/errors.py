"""Exception types shared across the package."""


class HorizonTeleportError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HorizonTeleportError, ValueError):
    """A parameter lies outside its physical domain."""


class TraceError(HorizonTeleportError, ValueError):
    """Density-matrix diagonal does not sum to one."""


class PositivityError(HorizonTeleportError, ValueError):
    """Matrix fails a positive-semidefiniteness requirement."""


class ShapeError(HorizonTeleportError, ValueError):
    """Matrix does not have the required size or sparsity pattern."""


class ConventionError(HorizonTeleportError, ValueError):
    """Matrix entries violate the fixed sign/reality convention."""


class DimensionError(HorizonTeleportError, ValueError):
    """Tensor-factor dimensions are inconsistent."""


class ZeroProbabilityError(HorizonTeleportError, ArithmeticError):
    """A filtering operation annihilated the state's support."""


class ConditionError(HorizonTeleportError, ArithmeticError):
    """The closed form's applicability conditions failed.

    The exception carries the out-of-validity closed-form value
    (``formula_value``) and a numerically maximized fallback result
    (``fallback``) so callers can recover without recomputing either.
    """

    def __init__(self, message, *, formula_value=None, fallback=None):
        super().__init__(message)
        self.formula_value = formula_value
        self.fallback = fallback


class RangeError(HorizonTeleportError, ValueError):
    """Integer selector outside its allowed range."""


class ConfigError(HorizonTeleportError, ValueError):
    """Sweep configuration is malformed."""


class EmptyInputError(HorizonTeleportError, ValueError):
    """An operation that needs data received none."""
