"""Exception types shared across the package."""


class ZenoError(Exception):
    """Base class for all qzeno errors."""


class DimensionError(ZenoError, ValueError):
    """Operands have incompatible sizes (qubit count, vector length)."""


class ContractError(ZenoError, ValueError):
    """A numerical contract was violated, e.g. a state that should be normalized is not."""


class DegenerateStateError(ContractError):
    """Attempted to renormalize a vector with zero norm."""
