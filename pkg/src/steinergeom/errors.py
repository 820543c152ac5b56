"""Exception types shared across the package."""


class SteinerGeomError(Exception):
    """Base class for all package errors."""


class AxiomViolation(SteinerGeomError):
    """Two points lie on two distinct nontrivial lines, or a clique fails to close.

    Attributes:
        pair: the offending point pair.
        witnesses: the conflicting lines or triples.
    """

    def __init__(self, pair, witnesses, message=None):
        self.pair = tuple(sorted(pair))
        self.witnesses = witnesses
        super().__init__(message or f"pair {self.pair} lies on conflicting lines: {witnesses}")


class FormatError(SteinerGeomError):
    """Malformed text input; carries a 1-based line number."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class SizeLimit(SteinerGeomError):
    """A search exceeded its configured exhaustive-search bound."""


class NotStrong(SteinerGeomError):
    """A precondition `lo <= hi` (strong substructure) failed."""

    def __init__(self, lo, hi, violating=None):
        self.lo = frozenset(lo)
        self.hi = frozenset(hi)
        self.violating = None if violating is None else frozenset(violating)
        msg = f"{sorted(self.lo)} is not strong in {sorted(self.hi)}"
        if violating is not None:
            msg += f" (witness {sorted(self.violating)})"
        super().__init__(msg)


class NotZeroPrimitive(SteinerGeomError):
    """The given (base, extension) pair is not a 0-primitive extension."""


class BaseMismatch(SteinerGeomError):
    """The shared part of two structures disagrees."""


class BoundTooSmall(SteinerGeomError):
    """A violation involves a configuration larger than the search bound."""

    def __init__(self, bound, message):
        self.bound = bound
        super().__init__(message)


class PairNotOnTriple(SteinerGeomError):
    """Cycle-graph base pair does not lie on a 3-point line."""
