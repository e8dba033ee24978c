"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration document or CLI argument failed validation.

    The message carries the offending field path (e.g. ``grid.n``).
    Mapped to exit code 2 by the command line interface.
    """


class NumericalError(RuntimeError):
    """A numerical routine failed (eigensolver breakdown, failure-rate abort).

    Mapped to exit code 3 by the command line interface.
    """
