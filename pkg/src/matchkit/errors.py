"""Exception types shared across the toolkit."""

from __future__ import annotations


class MatchkitError(Exception):
    """Base class for all toolkit errors."""


class InstanceError(MatchkitError):
    """Raised when raw preference data does not form a valid instance."""


class NTooSmall(InstanceError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"market size must be at least 2, got n={n}")


class SizeMismatch(InstanceError):
    def __init__(self, detail: str):
        super().__init__(f"preference matrices are not square n-by-n: {detail}")


class RowNotPermutation(InstanceError):
    def __init__(self, side: str, row: int):
        self.side = side
        self.row = row
        super().__init__(
            f"{side} row {row} is not a permutation of 0..n-1"
        )


class IndexOutOfRange(MatchkitError):
    def __init__(self, what: str, value: int, n: int):
        super().__init__(f"{what} index {value} out of range for n={n}")


class InvalidMatching(MatchkitError):
    """The pairs array is not a bijection compatible with the instance."""


class InvalidParams(MatchkitError):
    """Generator parameters outside their documented domain."""


class TooLarge(MatchkitError):
    def __init__(self, n: int, limit: int):
        self.n = n
        super().__init__(f"brute force guarded at n<={limit}, got n={n}")


class EmptiedList(MatchkitError):
    """A deletion sweep emptied a candidate list; impossible on valid input."""


class EmptyGroup(MatchkitError):
    """Aggregation was asked to summarise an empty record set."""


class InstanceMismatch(MatchkitError):
    """Two traces passed to a paired report come from different instances."""


class ParseError(MatchkitError):
    def __init__(self, path: str, line: int, detail: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {detail}")


class TheoremViolation(MatchkitError):
    """A guaranteed DA/ADA relationship failed on a concrete instance.

    Carries enough information to regenerate the offending instance.
    """

    def __init__(self, n: int, c: float, seed: int, detail: str):
        self.n = n
        self.c = c
        self.seed = seed
        super().__init__(f"invariant violated on (n={n}, c={c}, seed={seed}): {detail}")
