class CylprojError(Exception):
    """Base class for library errors."""


class TargetDimensionOccupied(CylprojError, ValueError):
    """Substitution target is already a free dimension of the set."""


class UnknownAtom(CylprojError, KeyError):
    """A discrete set names an atom the base does not define."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown atom"


class BoundExceeded(CylprojError, RuntimeError):
    """A brute-force computation would exceed its configured size bound."""


class ProfileOnly(CylprojError, ValueError):
    """The operation needs a set, but only a raw fiber profile is available."""
