"""Exception types shared across the package."""


class CognateKitError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(CognateKitError):
    """Invalid configuration or parameter value (a usage error)."""


class InvalidWordError(CognateKitError):
    """A word failed ingestion: empty, whitespace, digits, or reserved characters."""


class DataError(CognateKitError):
    """Malformed or inconsistent input data (dataset, lexicon, or model files)."""


class TrainingError(CognateKitError):
    """A training precondition was violated or an untrained component was used."""
