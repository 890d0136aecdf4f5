"""Exception types raised by the library.

Everything derives from :class:`TabSketchError` so callers can catch the
library's failures with one clause. Errors that are also programming
mistakes (bad key, bad configuration) additionally subclass ValueError.
"""


class TabSketchError(Exception):
    """Base class for all library errors."""


class KeyRangeError(TabSketchError, ValueError):
    """A key lies outside the configured universe."""


class ConfigError(TabSketchError, ValueError):
    """A universe spec, family string, or experiment config is invalid."""


class EmptySetError(TabSketchError, ValueError):
    """An operation that needs a non-empty key set received an empty one."""


class AlignmentError(TabSketchError, ValueError):
    """Two sketches built with different functions were compared."""


class StateSpaceError(TabSketchError, ValueError):
    """An exhaustive enumeration was requested over too large a state space."""


class VectorFormatError(TabSketchError, ValueError):
    """A test-vector file is malformed.

    ``line_number`` is 1-based and names the offending line.
    """

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
