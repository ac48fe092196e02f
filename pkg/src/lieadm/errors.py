"""Shared exception types.

Everything raised on purpose by this package derives from WorkbenchError,
so the command-line layer can map "your input was bad" onto one exit code
without fishing through unrelated tracebacks.
"""


class WorkbenchError(Exception):
    """Base class for all errors this package raises deliberately."""


class InputError(WorkbenchError):
    """Malformed or out-of-range arguments: bad indices, mismatched
    dimensions, theorem parameters that do not fit the degree cap."""


class FieldError(InputError):
    """Bad field description, or a scalar with no image in the field
    (for example a denominator divisible by the characteristic)."""


class UnsupportedVarietyError(InputError):
    """A variety whose defining identities are not all multilinear."""


class ResourceError(WorkbenchError):
    """A computation would exceed the configured size guard."""


class SchemaError(InputError):
    """A structure-constant file that does not match the input schema."""


class ExprSyntaxError(InputError):
    """Syntax error in an identity expression, with a 0-based byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
