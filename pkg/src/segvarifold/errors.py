"""Exception hierarchy shared by all modules."""


class VarifoldError(Exception):
    """Base class for every error raised by this package."""


class ArrangementError(VarifoldError):
    """Raw segments cannot be normalized into a valid arrangement."""


class WindowError(VarifoldError):
    """A ball, box or point escapes the window, or windows disagree."""


class NonGenericRegionError(VarifoldError):
    """A region boundary passes too close to a vertex or atom."""


class ClassError(VarifoldError):
    """Bad density class descriptor or mismatched classes."""


class InvalidSubMultiplicity(VarifoldError):
    pass


class NotAnAtomError(VarifoldError):
    pass


class SearchCapExceeded(VarifoldError):
    """Combinatorial search hit its node cap; the answer is undecided."""

    def __init__(self, cap: int, what: str = "search"):
        super().__init__(f"{what} exceeded cap of {cap} nodes; undecided")
        self.cap = cap
