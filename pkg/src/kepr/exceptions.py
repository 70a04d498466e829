"""Exception hierarchy.

Every error carries the process exit code the CLI reports for it.
"""


class KeprError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 1


class ConfigError(KeprError):
    """Invalid configuration: unknown keys, bad hyperparameters, missing files."""

    exit_code = 1


class UsageError(KeprError):
    """Bad command line."""

    exit_code = 1


class DataError(KeprError):
    """Malformed or inconsistent input data."""

    exit_code = 2


class BackendError(KeprError):
    """A generator, scorer or embedder backend failed or misbehaved.

    Args:
        backend: Name of the backend that failed
        message: What went wrong
    """

    exit_code = 3

    def __init__(self, backend: str, message: str):
        super().__init__(f"backend '{backend}': {message}")
        self.backend = backend
