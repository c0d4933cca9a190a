"""Exception types shared across the package.

The CLI maps ``ParseError`` to exit status 2 and every other subclass of
``TileShapeError`` to exit status 3.
"""


class TileShapeError(Exception):
    pass


class DimensionError(TileShapeError, ValueError):
    pass


class DomainError(TileShapeError, ValueError):
    pass


class PreconditionError(TileShapeError, ValueError):
    pass


class MembershipError(TileShapeError, ValueError):
    """A word was expected to lie in a subgroup and does not."""


class ConsistencyError(TileShapeError, RuntimeError):
    """Internal invariant broken; indicates a caller bug."""


class OutOfHypothesisError(TileShapeError, ValueError):
    """Parameters fall outside the range where the cited result applies."""


class ParseError(TileShapeError, ValueError):
    pass


class InvalidInputError(TileShapeError, ValueError):
    pass
