"""Exception types shared across the package."""


class TagError(Exception):
    """Base class for tagforge errors."""


class MalformedStateError(TagError):
    """A state contains symbols outside the rule's alphabet."""


class StateFormatError(TagError):
    """A textual state id or rule literal could not be parsed."""


class HaltedError(TagError):
    """An operation was applied to a state that is already halted."""


class InsufficientDataError(TagError):
    """Not enough data to compute the requested statistic."""
