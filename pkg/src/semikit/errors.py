"""Exception hierarchy."""


class SemikitError(Exception):
    """Base class for all package errors."""


class LimitExceededError(SemikitError):
    def __init__(self, order: int, limit: int, what: str = "enumeration"):
        self.order = order
        self.limit = limit
        super().__init__(f"{what} limit exceeded: group order {order} > limit {limit}")


class NotAHomomorphismError(SemikitError):
    """Raised with the first pair ``(g, h)`` whose product is not preserved."""

    def __init__(self, pair, message: str | None = None):
        self.pair = tuple(int(v) for v in pair)
        super().__init__(message or f"map is not a homomorphism: f(g*h) != f(g)*f(h) for (g, h) = {self.pair}")


class InvalidTwistError(SemikitError):
    pass


class NotDiagonalError(SemikitError):
    pass


class NotAProductError(SemikitError):
    pass


class TwistNotTrivialError(SemikitError):
    pass
