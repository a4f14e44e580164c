"""Exception types raised across the package."""


class FairMannaError(Exception):
    """Base class for every error raised by fairmanna."""


class InvalidInstance(FairMannaError, ValueError):
    pass


class InvalidAllocation(FairMannaError, ValueError):
    pass


class GeneralModelError(FairMannaError, ValueError):
    """Raised when an operation needs additive utilities but got a general table."""


class ItemInBundle(FairMannaError, ValueError):
    pass


class TooLarge(FairMannaError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class ZeroTotal(FairMannaError, ValueError):
    pass


class SignMismatch(FairMannaError, ValueError):
    pass


class SameAgent(FairMannaError, ValueError):
    pass


class MixedItemEncountered(FairMannaError):
    """The greedy algorithm met an item with both a positive and a negative marginal and no zero one."""

    def __init__(self, round_: int, item: str):
        super().__init__(f"round {round_}: item {item!r} is mixed for the current bundles")
        self.round = round_
        self.item = item


class TooManyItems(FairMannaError, ValueError):
    pass


class BadParameters(FairMannaError, ValueError):
    pass


class InvalidCover(FairMannaError, ValueError):
    pass


class UnknownFixture(FairMannaError, KeyError):
    pass


class RejectionCapExceeded(FairMannaError):
    pass


class ChainViolation(FairMannaError, AssertionError):
    """Two verdicts contradict an implication that holds for the implemented definitions."""
