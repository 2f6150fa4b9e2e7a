"""Exception types shared across the package."""


class DomainError(ValueError):
    """A mathematically invalid input: bad modulus, non-coprime pair, zero unit, ..."""


class ParseError(ValueError):
    """Malformed polynomial text; carries the offending position when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
