"""Exception types shared across the package.

Every domain error derives from :class:`LatticeLabError` so the CLI can map
them to exit code 1 with a stable JSON shape.
"""


class LatticeLabError(ValueError):
    """Base class for domain errors."""

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self)}


class NotEvenSelfDual(LatticeLabError):
    """No even self-dual lattice exists for the requested signature."""


class DegenerateForm(LatticeLabError):
    """The Gram matrix has determinant zero."""


class DimensionMismatch(LatticeLabError):
    pass


class NotARoot(LatticeLabError):
    pass


class NotUnimodular(LatticeLabError):
    pass


class NotCoprime(LatticeLabError):
    pass


class NotNormTwo(LatticeLabError):
    pass


class ZeroMatrix(LatticeLabError):
    pass


class ZeroOnRoot(LatticeLabError):
    """A linear ordering vanishes on a root and cannot split the root set."""

    def __init__(self, root, message=None):
        self.root = tuple(root)
        super().__init__(message or f"ordering vanishes on root {list(self.root)}")

    def to_json(self):
        return {**super().to_json(), "root": list(self.root)}


class Inconclusive(LatticeLabError):
    """The iteration budget ran out before a certificate was found."""

    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"no certified small height root within budget {budget}")

    def to_json(self):
        return {**super().to_json(), "budget": self.budget}


class TerminatedEarly(UserWarning):
    """A continued fraction expansion ended before the requested depth."""
