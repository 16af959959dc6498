"""Exception types shared by every module; the CLI maps them to exit code 2."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class DimensionError(InputError):
    """Operands live in spaces of different dimension."""


class OddChainError(InputError):
    """A norm was requested for a chain outside the even subgroup."""


class EnumerationLimitError(InputError):
    """The requested exhaustive enumeration is larger than the supported cap."""
