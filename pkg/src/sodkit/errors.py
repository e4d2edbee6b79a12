"""Exception types shared across the package."""


class SodkitError(Exception):
    """Base class for errors raised by sodkit."""


class InvalidDims(SodkitError):
    """A partition or box dimension argument is out of range."""


class BadIndexSet(SodkitError):
    """A chart index set is not a valid subset of {1, ..., n}."""


class ChartMismatch(SodkitError):
    """A point was given in coordinates that do not fit the chart."""


class DenominatorViolation(SodkitError):
    """A division left the ring of functions regular on the chart overlap."""


class NoSolutionError(SodkitError):
    """A linear system has no solution over the requested ring."""


class RankMismatch(SodkitError):
    """Two constructions that must produce equal ranks disagreed."""
