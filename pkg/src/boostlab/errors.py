"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid user input: unknown preset, bad ranges, malformed config file."""


class UnknownPresetError(ConfigError):
    """Requested preset name is not in the registry."""


class NumericalError(RuntimeError):
    """A numerical contract was violated (trace drift, degenerate norm, ...)."""


class OrbitError(NumericalError):
    """A sweep point failed; the message names the offending rapidity."""
