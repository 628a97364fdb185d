"""Exception hierarchy shared by the library and the command-line tool."""


class FemaError(Exception):
    """Base class for every error raised by this package."""


class DatasetError(FemaError, ValueError):
    """Malformed or inconsistent tabular data."""


class MissingColumnError(DatasetError):
    pass


class ParseError(DatasetError):
    pass


class EmptyFileError(DatasetError):
    pass


class SingleClassError(DatasetError):
    pass


class DimensionError(FemaError, ValueError):
    """Feature counts or vector shapes do not agree."""


class NotNormalizedError(FemaError, ValueError):
    """Input expected in [0, 1] holds values outside that range."""
