"""Exception types shared across the package."""


class FixcodeError(Exception):
    """Base class for errors raised by this package."""


class ResourceCapError(FixcodeError):
    """A computation would exceed a configured resource cap."""


class PreconditionError(FixcodeError):
    """An operation's precondition failed; distinct from a refuted claim."""


class SearchRefutation(FixcodeError):
    """An exhaustive search failed to produce a witness it should have found."""


class ConstructionError(FixcodeError):
    """A code constructor's self-checks failed."""
