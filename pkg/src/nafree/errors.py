"""Exception hierarchy shared by all modules."""


class NafreeError(Exception):
    """Base class for all library errors."""


class InputError(NafreeError):
    """Malformed user input: bad JSON, unknown names, schema violations."""


class PreconditionError(NafreeError):
    """An operation was called outside its stated domain."""


class CapExceeded(PreconditionError):
    """A combinatorial enumeration would exceed the configured cap."""
