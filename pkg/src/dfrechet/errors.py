"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Two inputs live in different ambient dimensions."""


class ContractViolation(RuntimeError):
    """An internal consistency check failed (e.g. a decider broke its fuzzy contract)."""


class GenerationError(RuntimeError):
    """A randomized generator gave up after its retry budget."""
