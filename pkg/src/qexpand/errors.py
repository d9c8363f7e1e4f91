"""Exception hierarchy shared by every module of the package."""


class QSeriesError(Exception):
    """Base class for all errors raised by qexpand."""


class PoleError(QSeriesError):
    """A denominator factor vanished (or came within the pole tolerance of zero)."""


class DomainError(QSeriesError):
    """An argument lies outside the domain of an operation."""


class NoConvergence(QSeriesError):
    """A summation hit its term budget before the stopping rule fired."""


class ScalarOverflow(QSeriesError):
    """A non-finite value escaped an arithmetic operation."""


class NotFound(QSeriesError, KeyError):
    """Unknown catalog identifier."""

    def __str__(self):
        return Exception.__str__(self)


class ExhaustedRejections(QSeriesError):
    """The sampler rejected too many consecutive draws for one identity."""


class ConfigError(QSeriesError, ValueError):
    """Invalid run configuration."""
