"""Error taxonomy shared by the library and the command-line front end.

Each class name doubles as the ``error`` kind reported by the CLI.
"""


class StarRootsError(Exception):
    """Base class for domain failures (CLI exit status 2)."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class NearReal(StarRootsError):
    """A quaternion with (numerically) zero vector part was given where a non-real one is needed."""


class OnVinfinity(StarRootsError):
    """The vector square of a complexified quaternion vanishes."""


class NotInOmega(StarRootsError):
    """Input lies outside the covering domain; ``stratum`` says where."""

    def __init__(self, message, stratum=None):
        super().__init__(message)
        self.stratum = stratum

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.stratum is not None:
            d["stratum"] = self.stratum.tag.name
            if self.stratum.r_index is not None:
                d["r_index"] = self.stratum.r_index
        return d


class StratumHit(NotInOmega):
    """A sample along a path left the covering domain."""

    def __init__(self, message, stratum=None, index=None):
        super().__init__(message, stratum)
        self.index = index

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.index is not None:
            d["index"] = self.index
        return d


class AmbiguousTracking(StarRootsError):
    """Nearest-neighbour continuation could not tell two branches apart."""


class MatchingFailure(StarRootsError):
    """A conjugated branch matched nothing in the branch list."""


class AnchorNotReal(StarRootsError):
    """The anchor point or its stem value is not real."""


class AnchorNotInOmega(StarRootsError):
    """The stem value at the real anchor is a real quaternion."""


class PathNotSymmetric(StarRootsError):
    """A path is not closed under complex conjugation."""


class PoleAtMinusI(StarRootsError):
    """Cayley transform evaluated at its pole."""


class OutOfDomain(StarRootsError):
    """A stem was queried where it carries no data."""


class RealPointsInDomain(StarRootsError):
    """An operation that needs a domain without real points got a whole-plane stem."""


class IdenticallyZero(StarRootsError):
    """Every derivative vanished up to the degree cap."""
