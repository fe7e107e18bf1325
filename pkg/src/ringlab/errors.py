"""Exception hierarchy for ringlab."""


class RinglabError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RinglabError, ValueError):
    pass


class NotIrreducible(RinglabError, ValueError):
    pass


class BudgetExceeded(RinglabError):
    pass


class NotAUnit(RinglabError, ValueError):
    pass


class WrongRing(RinglabError, ValueError):
    pass


class NotMonic(RinglabError, ValueError):
    pass


class NotAChainRing(RinglabError):
    pass


class CharIsP(RinglabError):
    """Chain-ring theorems need characteristic p^c with c > 1."""


class NotCommutative(RinglabError):
    pass


class UnsupportedSuite(RinglabError):
    """A suite's precondition does not hold for the requested ring."""
