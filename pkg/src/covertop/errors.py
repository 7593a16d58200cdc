"""Exception hierarchy shared by the library and the command line."""


class CovertopError(Exception):
    pass


class InputError(CovertopError, ValueError):
    """Malformed input: unknown element, bad table, invalid file."""


class BaseMismatchError(InputError):
    pass


class SizeCapError(CovertopError):
    """A desk-scale size guard was exceeded."""


class InvariantError(CovertopError):
    """An internal consistency check failed. Indicates a bug."""
