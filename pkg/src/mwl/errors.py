"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """A module or scenario configuration is not supported."""


class SetSizeLimitError(ConfigurationError):
    """A finite-set computation would exceed the element cap."""

    def __init__(self, cap: int):
        super().__init__(f"finite subset would exceed the cap of {cap} elements")
        self.cap = cap
