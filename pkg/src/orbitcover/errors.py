"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class OrbitCoverError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OrbitCoverError, ValueError):
    """An argument lies outside the domain of the operation."""


class MembershipError(DomainError, KeyError):
    """An element is not a member of the relevant pitch-class set."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class ParseError(OrbitCoverError, ValueError):
    """Textual input could not be parsed."""
