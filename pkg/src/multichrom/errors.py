class DomainError(ValueError):
    """Arguments fall outside the domain of an operation."""


class InvalidColouring(DomainError):
    """A colouring object is structurally malformed (as opposed to improper)."""
