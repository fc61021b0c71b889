"""Exception types shared across the package."""


class PlusOneError(Exception):
    pass


class MalformedInput(PlusOneError, ValueError):
    """A text file or token does not follow the expected format."""


class AlphabetMismatch(PlusOneError, ValueError):
    pass


class UnknownSymbol(PlusOneError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown symbol"


class EpsilonAccepted(PlusOneError, ValueError):
    """Raised where languages must live in A+ but the empty word is accepted."""


class NotWellFormed(PlusOneError, ValueError):
    pass


class NotIdempotent(PlusOneError, ValueError):
    pass


class BoundExceeded(PlusOneError, ValueError):
    pass


class MissingOrder(PlusOneError, ValueError):
    pass


class NotUpwardClosed(PlusOneError, ValueError):
    pass


class IsSeparable(PlusOneError, ValueError):
    pass


class InvalidAction(PlusOneError, ValueError):
    pass


class NotInD(PlusOneError, ValueError):
    pass


class NotAntichain(PlusOneError, ValueError):
    pass
