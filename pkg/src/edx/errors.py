"""Error taxonomy shared by all edx modules."""


class EdxError(Exception):
    """Base class for data and usage errors raised by this package."""


class InvalidArgument(EdxError):
    """A caller-supplied value violates an operation's preconditions."""


class NotFound(EdxError):
    """A named dataset, event type, or trigger does not exist."""


class FormatMismatch(EdxError):
    """An input file does not look like the declared format."""
